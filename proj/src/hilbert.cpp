#include "spectraflow/hilbert.hpp"

#include "spectraflow/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace spectraflow {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
  case ModelKind::Rabi: return "rabi";
  case ModelKind::JaynesCummings: return "jc";
  case ModelKind::AsymmetricRabi: return "asym_rabi";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "rabi") return ModelKind::Rabi;
  if (lower == "jc" || lower == "jaynes_cummings") return ModelKind::JaynesCummings;
  if (lower == "asym_rabi" || lower == "asymmetric_rabi") return ModelKind::AsymmetricRabi;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected rabi, jc or asym_rabi)");
}

void ModelParams::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(omega0) || !std::isfinite(g) || !std::isfinite(epsilon))
    throw ConfigError("model parameters must be finite");
  if (omega <= 0.0) throw ConfigError("omega must be positive");
  if (omega0 <= 0.0) throw ConfigError("omega0 must be positive");
  if (model == ModelKind::JaynesCummings && epsilon != 0.0)
    throw ConfigError("the JC model has no symmetry-breaking term; epsilon must be 0");
}

FockTruncation::FockTruncation(std::size_t n_cut) : n_cut_(n_cut) {
  if (n_cut < 2) throw ConfigError("Fock truncation needs n_cut >= 2, got " + std::to_string(n_cut));
}

Matrix annihilation(FockTruncation trunc) {
  const std::size_t n_cut = trunc.n_cut();
  Matrix a(n_cut, n_cut);
  for (std::size_t n = 1; n < n_cut; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix creation(FockTruncation trunc) { return annihilation(trunc).transposed(); }

QubitOperators qubit_operators() {
  QubitOperators q{Matrix(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)};
  q.sigma_plus(1, 0) = 1.0;
  q.sigma_minus(0, 1) = 1.0;
  q.sigma_x = q.sigma_plus + q.sigma_minus;
  // sigma_y = i(sigma_- - sigma_+) in this basis
  q.sigma_y_imag = q.sigma_minus - q.sigma_plus;
  q.sigma_z(0, 0) = -1.0;
  q.sigma_z(1, 1) = 1.0;
  return q;
}

namespace {

// Visits every nonzero entry (i, j) with i <= j exactly once.
template <typename Sink>
void for_each_hamiltonian_entry(const ModelParams& p, FockTruncation trunc, Sink&& emit) {
  p.validate();
  const std::size_t n_cut = trunc.n_cut();
  using FT = FockTruncation;

  for (std::size_t n = 0; n < n_cut; ++n) {
    const double field = p.omega * static_cast<double>(n);
    emit(FT::index(n, 0), FT::index(n, 0), field - 0.5 * p.omega0);
    emit(FT::index(n, 1), FT::index(n, 1), field + 0.5 * p.omega0);
    if (p.epsilon != 0.0) emit(FT::index(n, 0), FT::index(n, 1), p.epsilon);
  }

  for (std::size_t n = 1; n < n_cut; ++n) {
    const double c = p.g * std::sqrt(static_cast<double>(n));
    // a ⊗ sigma_+ : |n, g> -> sqrt(n) |n-1, e>
    emit(FT::index(n - 1, 1), FT::index(n, 0), c);
    // counter-rotating a ⊗ sigma_- : |n, e> -> sqrt(n) |n-1, g>
    if (p.model != ModelKind::JaynesCummings) emit(FT::index(n - 1, 0), FT::index(n, 1), c);
  }
}

} // namespace

Matrix build_hamiltonian(const ModelParams& p, FockTruncation trunc) {
  Matrix h(trunc.dimension(), trunc.dimension());
  for_each_hamiltonian_entry(p, trunc, [&](std::size_t i, std::size_t j, double v) {
    h(i, j) = v;
    h(j, i) = v;
  });
  return h;
}

std::size_t hamiltonian_bandwidth(ModelKind model) noexcept {
  return model == ModelKind::JaynesCummings ? 1 : 3;
}

SymmetricBandMatrix build_hamiltonian_band(const ModelParams& p, FockTruncation trunc) {
  SymmetricBandMatrix h(trunc.dimension(), hamiltonian_bandwidth(p.model));
  for_each_hamiltonian_entry(p, trunc, [&](std::size_t i, std::size_t j, double v) { h.set(i, j, v); });
  return h;
}

Matrix coupling_operator(ModelKind model, FockTruncation trunc) {
  ModelParams unit;
  unit.model = model;
  unit.g = 1.0;
  Matrix h1 = build_hamiltonian(unit, trunc);
  unit.g = 0.0;
  return h1 - build_hamiltonian(unit, trunc);
}

double coupling_expectation(ModelKind model, std::span<const double> v) {
  if (v.size() % 2 != 0) throw ConfigError("coupling_expectation: odd vector length");
  const std::size_t n_cut = v.size() / 2;
  using FT = FockTruncation;
  double sum = 0.0;
  for (std::size_t n = 1; n < n_cut; ++n) {
    double pair = v[FT::index(n - 1, 1)] * v[FT::index(n, 0)];
    if (model != ModelKind::JaynesCummings) pair += v[FT::index(n - 1, 0)] * v[FT::index(n, 1)];
    sum += std::sqrt(static_cast<double>(n)) * pair;
  }
  return 2.0 * sum;
}

Matrix excitation_number(FockTruncation trunc) {
  Matrix n_op(trunc.dimension(), trunc.dimension());
  for (std::size_t n = 0; n < trunc.n_cut(); ++n)
    for (std::size_t s = 0; s < 2; ++s)
      n_op(FockTruncation::index(n, s), FockTruncation::index(n, s)) = static_cast<double>(n + s);
  return n_op;
}

} // namespace spectraflow
