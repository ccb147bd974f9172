// Times the interpretation-space kernels (least-specific model construction
// and the necessity reduction) in serial against the OpenMP path on a large
// contextual program, and checks that both produce identical exact values.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pgl/oracle.hpp"
#include "pgl/parser.hpp"
#include "pgl/semantics.hpp"

namespace {

const char* kProgram = R"(
sort years = 0..120
sort height_cm = 120..220

var john_is_young : years = trapezoid(10, 15, 25, 30)
var john_is_teen : years = trapezoid(12, 13, 19, 20)
var john_is_about_16 : years = trapezoid(14, 16, 16, 18)
var john_is_tall : height_cm = trapezoid(165, 180, 220, 220)
var john_is_very_tall : height_cm = trapezoid(185, 195, 220, 220)
var plays_basketball
var likes_sports

clause (john_is_teen, 0.9)
clause (john_is_tall, 0.8)
clause (john_is_young & john_is_tall -> plays_basketball, 0.7)
clause (plays_basketball -> likes_sports, 0.6)
clause (john_is_very_tall & likes_sports -> plays_basketball, 0.4)
)";

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::stoi(argv[1]) : 3;

  pgl::Program program = pgl::parse_program(kProgram);
  auto grid = pgl::default_truth_grid(program);
  auto space = pgl::InterpretationSpace::build(program, grid, 1ull << 33);

  std::cout << "space: " << space->size() << " interpretations, grid " << grid.size()
            << " values";
#ifdef _OPENMP
  std::cout << ", " << omp_get_max_threads() << " threads";
#endif
  std::cout << "\n\n";

  pgl::LeastSpecificModel serial_model, parallel_model;
  double lsm_serial = time_ms(
      [&] { serial_model = pgl::least_specific_model(program, space, pgl::Exec::serial); },
      repeats);
  double lsm_parallel = time_ms(
      [&] { parallel_model = pgl::least_specific_model(program, space, pgl::Exec::parallel); },
      repeats);
  bool lsm_match = serial_model.pi_star.values == parallel_model.pi_star.values &&
                   serial_model.normalized == parallel_model.normalized;

  pgl::Degree nec_serial_val, nec_parallel_val;
  auto goal = pgl::Formula::atom("john_is_about_16");
  double nec_serial = time_ms(
      [&] {
        nec_serial_val =
            pgl::necessity_of_formula(*goal, serial_model.pi_star, pgl::Exec::serial);
      },
      repeats);
  double nec_parallel = time_ms(
      [&] {
        nec_parallel_val =
            pgl::necessity_of_formula(*goal, serial_model.pi_star, pgl::Exec::parallel);
      },
      repeats);
  bool nec_match = nec_serial_val == nec_parallel_val;

  auto row = [](const std::string& name, double serial, double parallel, bool match) {
    std::cout << name << ": serial " << serial << " ms, openmp " << parallel << " ms, speedup "
              << (parallel > 0 ? serial / parallel : 0.0) << "x, identical "
              << (match ? "yes" : "NO") << "\n";
  };
  row("least_specific_model", lsm_serial, lsm_parallel, lsm_match);
  row("necessity_reduction ", nec_serial, nec_parallel, nec_match);

  return (lsm_match && nec_match) ? 0 : 1;
}
