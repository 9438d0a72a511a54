// Regenerates tests/fixtures/betti_fixtures.json from the Betti oracle.
// The committed file is the reference the engine cross-checks against;
// rerun this tool only when the fixture set itself changes.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "sodforge/betti.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  using namespace sodforge;
  nlohmann::ordered_json out;

  out["bl_p1_p3"] = betti_oracle(
      toy_blowup(toy_projective_space(3), toy_projective_space(1), 2));
  out["bl_pt_p2"] = betti_oracle(toy_blowup(toy_projective_space(2), toy_point(), 2));
  out["p_o3_over_point"] = betti_oracle(toy_projective_bundle(toy_point(), 3));
  out["divisor_11_p3xp1"] = betti_oracle(toy_divisor_hyperplane({3, 1}, {1, 1}));

  const char* path = argc > 1 ? argv[1] : "betti_fixtures.json";
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  f << out.dump(2) << "\n";
  std::cout << out.dump(2) << "\n";
  return 0;
}
