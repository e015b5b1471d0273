#pragma once

#include <filesystem>

#include "guamp/model.hpp"

namespace guamp {

// Problem directory: meta.json plus A.csv, x.csv, y.csv (row-major, shortest
// round-trip decimal). Reading a directory back reproduces the doubles exactly.
void write_problem_dir(const GlmProblem& problem, const std::filesystem::path& dir);
GlmProblem read_problem_dir(const std::filesystem::path& dir);

}  // namespace guamp
