#include "guamp/fixture.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "guamp/csv.hpp"
#include "guamp/errors.hpp"

namespace guamp {

namespace {

using nlohmann::json;

void write_matrix(const Matrix& M, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  for (Index i = 0; i < M.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(M.cols()));
    for (Index j = 0; j < M.cols(); ++j) {
      row.push_back(csv::format_double(M(i, j)));
    }
    out << csv::join_row(row) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

Matrix read_matrix(const std::filesystem::path& path, Index rows, Index cols) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  Matrix M(rows, cols);
  std::string line;
  Index i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    if (i >= rows) {
      throw InvalidParameter(path.string() + ": too many rows");
    }
    const auto fields = csv::split_row(line);
    if (static_cast<Index>(fields.size()) != cols) {
      throw InvalidParameter(path.string() + ": wrong column count");
    }
    for (Index j = 0; j < cols; ++j) {
      M(i, j) = csv::parse_double(fields[static_cast<std::size_t>(j)]);
    }
    ++i;
  }
  if (i != rows) {
    throw InvalidParameter(path.string() + ": too few rows");
  }
  return M;
}

json channel_to_json(const ChannelSpec& c) {
  return json{{"kind", std::string(to_string(c.kind))},
              {"thresholds", c.thresholds},
              {"noise_std", c.noise_std}};
}

ChannelSpec channel_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const double noise_std = j.at("noise_std").get<double>();
  if (kind == "gaussian") {
    return ChannelSpec::gaussian(noise_std);
  }
  if (kind == "onebit") {
    return ChannelSpec::onebit(noise_std);
  }
  if (kind == "multibit") {
    return ChannelSpec::multibit(j.at("thresholds").get<std::vector<double>>(), noise_std);
  }
  throw InvalidParameter("unknown channel kind '" + kind + "'");
}

}  // namespace

void write_problem_dir(const GlmProblem& problem, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const json meta{
      {"m", problem.A.rows()},
      {"n", problem.A.cols()},
      {"rho", problem.rho},
      {"seed", problem.seed},
      {"channel", channel_to_json(problem.channel)},
      {"prior",
       {{"kind", "bernoulli_gaussian"},
        {"lambda", problem.prior.lambda},
        {"slab_var", problem.prior.slab_var}}},
      {"noise_var", problem.noise_var},
  };
  {
    std::ofstream out(dir / "meta.json");
    out << meta.dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("cannot write " + (dir / "meta.json").string());
    }
  }
  write_matrix(problem.A, dir / "A.csv");
  write_matrix(problem.x_true, dir / "x.csv");
  write_matrix(problem.y, dir / "y.csv");
}

GlmProblem read_problem_dir(const std::filesystem::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) {
    throw std::runtime_error("cannot open " + (dir / "meta.json").string());
  }
  const json meta = json::parse(in);
  const auto m = meta.at("m").get<Index>();
  const auto n = meta.at("n").get<Index>();

  GlmProblem problem;
  problem.rho = meta.at("rho").get<double>();
  problem.seed = meta.at("seed").get<std::uint64_t>();
  problem.channel = channel_from_json(meta.at("channel"));
  const auto& prior = meta.at("prior");
  problem.prior = PriorSpec{prior.at("lambda").get<double>(), prior.at("slab_var").get<double>()};
  problem.prior.validate();
  problem.noise_var = meta.at("noise_var").get<double>();
  problem.A = read_matrix(dir / "A.csv", m, n);
  problem.x_true = read_matrix(dir / "x.csv", n, 1);
  problem.y = read_matrix(dir / "y.csv", m, 1);
  problem.z_true = problem.A * problem.x_true;
  return problem;
}

}  // namespace guamp
