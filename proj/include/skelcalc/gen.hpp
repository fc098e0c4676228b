#pragma once

#include "skelcalc/radius.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace skc {

struct GenParams {
  std::uint64_t seed = 1;
  int rank = 2;
  std::string shape = "general";  // general | disk | annulus
  int s_vertices = 2;
  int genus = 2;
  int loops = -1;                 // -1: as many as the genus allows
  int open_germs = 0;
  int boundary = 0;
  int joint_percent = 50;         // chance that a skeleton edge gets a midpoint joint
  int trees_max = 1;              // per vertex
  int tree_depth = 2;
  int tree_branching = 2;
  int max_block = 2;              // largest block of equal radii
  int slope_max = 2;              // numerators of slopes, over the block size
  int value_max = 4;
  bool concavity = true;
  bool decrease = true;
  bool superharmonic = true;
  bool minimal = false;
  std::string adversarial;        // empty, or one of adversarial_names()
  int retries = 400;
};

GenParams parse_params(const std::string& text);  // key=value lines; ParseError
std::string params_text(const GenParams& p);

// Free trees with every vertex marked, one per isomorphism class.
std::vector<AGraph> enumerate_marked_trees(int n_max);  // BudgetExceeded above 10

Complex gen_skeleton(const GenParams& p);                           // InfeasibleParams
Profile gen_profile(const Complex& X, const GenParams& p);          // InfeasibleParams
Instance generate(const GenParams& p);

const std::vector<std::string>& adversarial_names();
// The row id each adversarial instance is built to break.
std::string adversarial_target(const std::string& name);
Instance adversarial(const std::string& name, std::uint64_t seed = 1);

// Named fixtures: circle, theta, genus1, path3, disk-gos.
Instance fixture(const std::string& name);
const std::vector<std::string>& fixture_names();

// R_i as the i-th smallest of the given functions, pointwise (germs break ties by slope).
PLFunction order_statistic(const Complex& X, const std::vector<PLFunction>& fs, int k);

}  // namespace skc
