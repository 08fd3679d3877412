#pragma once

#include "spectraflow/band.hpp"
#include "spectraflow/matrix.hpp"

#include <cstddef>
#include <span>
#include <string_view>

namespace spectraflow {

enum class ModelKind { Rabi, JaynesCummings, AsymmetricRabi };

std::string_view to_string(ModelKind kind) noexcept;
// Accepts "rabi", "jc", "asym_rabi" (case-insensitive) and the upper-case spellings.
ModelKind parse_model_kind(std::string_view name);

// Physical parameters in units with hbar = 1. Frequencies are in units of the
// field frequency, which defaults to 1. epsilon is likewise in units of omega.
struct ModelParams {
  ModelKind model = ModelKind::Rabi;
  double omega = 1.0;
  double omega0 = 1.0;
  double g = 0.0;
  double epsilon = 0.0;

  // Throws ConfigError on omega <= 0, omega0 <= 0, non-finite values or a
  // nonzero epsilon on the JC model.
  void validate() const;

  ModelParams with_g(double coupling) const {
    ModelParams p = *this;
    p.g = coupling;
    return p;
  }
};

// Number of retained Fock levels |0>..|n_cut-1>; joint dimension 2*n_cut.
class FockTruncation {
public:
  explicit FockTruncation(std::size_t n_cut);

  std::size_t n_cut() const noexcept { return n_cut_; }
  std::size_t dimension() const noexcept { return 2 * n_cut_; }

  // Joint basis index: field index outer, atom index inner (0 = |g>, 1 = |e>).
  static constexpr std::size_t index(std::size_t n, std::size_t s) noexcept { return 2 * n + s; }

  friend bool operator==(FockTruncation, FockTruncation) = default;

private:
  std::size_t n_cut_;
};

// Field annihilation operator, n_cut x n_cut: entry (n-1, n) = sqrt(n).
Matrix annihilation(FockTruncation trunc);
Matrix creation(FockTruncation trunc);

struct QubitOperators {
  Matrix sigma_x;
  Matrix sigma_y_imag;  // sigma_y = i * sigma_y_imag
  Matrix sigma_z;
  Matrix sigma_plus;
  Matrix sigma_minus;
};

// Pauli operators in the (|g>, |e>) basis, sigma_z = diag(-1, +1), sigma_+ = |e><g|.
QubitOperators qubit_operators();

// Dense real symmetric Hamiltonian of the selected model in the joint basis.
Matrix build_hamiltonian(const ModelParams& p, FockTruncation trunc);

// Same operator in band storage; the joint basis ordering puts every nonzero
// within hamiltonian_bandwidth() of the diagonal.
SymmetricBandMatrix build_hamiltonian_band(const ModelParams& p, FockTruncation trunc);
std::size_t hamiltonian_bandwidth(ModelKind model) noexcept;

// dH/dg for the selected model: (a + a†) ⊗ sigma_x for the Rabi family,
// a ⊗ sigma_+ + a† ⊗ sigma_- for JC.
Matrix coupling_operator(ModelKind model, FockTruncation trunc);

// <v| dH/dg |v> without forming the operator.
double coupling_expectation(ModelKind model, std::span<const double> v);

// Total excitation number a†a + |e><e|, diagonal with entry n + s at 2n + s.
Matrix excitation_number(FockTruncation trunc);

} // namespace spectraflow
