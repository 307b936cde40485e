#include "hypercopy/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hypercopy {

ModelParams::ModelParams(double eta_, std::vector<double> gamma_, std::vector<double> beta_)
    : eta(eta_), gamma(std::move(gamma_)), beta(std::move(beta_)) {
  normalize_lengths();
  validate();
}

void ModelParams::normalize_lengths() {
  const std::size_t k = std::max(gamma.size(), beta.size());
  gamma.resize(k, 0.0);
  beta.resize(k, 0.0);
}

double ModelParams::mu_gamma() const {
  double mu = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) mu += static_cast<double>(i) * gamma[i];
  return mu;
}

double ModelParams::mu_beta() const {
  double mu = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) mu += static_cast<double>(i) * beta[i];
  return mu;
}

void ModelParams::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DataError("eta must be in [0,1]");
  if (gamma.empty() || beta.empty()) throw DataError("gamma and beta must be nonempty");
  if (gamma.size() != beta.size())
    throw DataError("gamma and beta must have the same length (kbar + 1)");
  for (auto [name, vec] : {std::pair{"gamma", &gamma}, std::pair{"beta", &beta}}) {
    double sum = 0.0;
    for (double p : *vec) {
      if (p < 0.0) throw DataError(std::string(name) + " has a negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw DataError(std::string(name) + " must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

std::string ModelParams::to_json() const {
  nlohmann::ordered_json j;
  j["eta"] = eta;
  j["gamma"] = gamma;
  j["beta"] = beta;
  return j.dump(2) + "\n";
}

ModelParams ModelParams::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("params json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("eta") || !j.contains("gamma") || !j.contains("beta"))
    throw DataError("params json must be {\"eta\", \"gamma\", \"beta\"}");
  ModelParams p;
  try {
    p.eta = j["eta"].get<double>();
    p.gamma = j["gamma"].get<std::vector<double>>();
    p.beta = j["beta"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("params json: ") + e.what());
  }
  p.normalize_lengths();
  p.validate();
  return p;
}

ModelParams ModelParams::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void ModelParams::to_json_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << to_json();
}

std::vector<double> ModelParams::truncated_poisson(double mean, int cutoff) {
  std::vector<double> p(static_cast<std::size_t>(cutoff) + 1);
  double term = std::exp(-mean);
  double sum = 0.0;
  for (int k = 0; k <= cutoff; ++k) {
    p[k] = term;
    sum += term;
    term *= mean / static_cast<double>(k + 1);
  }
  for (double& x : p) x /= sum;
  return p;
}

std::vector<double> ModelParams::delta(int k, int kbar) {
  std::vector<double> p(static_cast<std::size_t>(kbar) + 1, 0.0);
  p.at(k) = 1.0;
  return p;
}

}  // namespace hypercopy
