#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "agpsched/pauli.hpp"

namespace agpsched {

enum class Boundary { kPeriodic, kOpen };

enum class ModelFamily { kGeneric, kTfim, kAnnni };

struct Coupling {
  int i = 0;
  int j = 0;       // i < j
  double strength = 0.0;
};

struct LocalField {
  int site = 0;
  double strength = 0.0;
};

/// An annealing problem instance: ZZ couplings and Z fields in the canonical
/// convention H_P = -sum J_ij Z_i Z_j - sum h_i Z_i, transverse driver
/// H_V = -sum X_i. Named families keep their parameters for serialization;
/// `couplings`/`fields_z` always hold the expanded canonical form.
struct AnnealingModel {
  int n_sites = 0;
  Boundary boundary = Boundary::kPeriodic;
  ModelFamily family = ModelFamily::kGeneric;
  double J = 0.0;  // tfim, annni
  double k = 0.0;  // annni next-nearest strength (enters H_P as +k Z Z)
  std::vector<Coupling> couplings;
  std::vector<LocalField> fields_z;

  /// Short identifier like "tfim(J=1,L=10,periodic)" for output metadata.
  std::string tag() const;
};

AnnealingModel make_tfim(int n_sites, double J, Boundary boundary = Boundary::kPeriodic);
AnnealingModel make_annni(int n_sites, double J, double k, Boundary boundary = Boundary::kPeriodic);
AnnealingModel make_generic(int n_sites, std::vector<Coupling> couplings,
                            std::vector<LocalField> fields,
                            Boundary boundary = Boundary::kPeriodic);

/// Parse the key-value model document (see README for the schema). Strict:
/// unknown keys, duplicate couplings, and out-of-range indices are errors.
AnnealingModel parse_model(std::string_view text, const std::string& source_name = "<string>");
AnnealingModel load_model(const std::filesystem::path& path);
std::string serialize_model(const AnnealingModel& m);

/// -sum J_ij Z_i Z_j - sum h_i Z_i; diagonal in the computational basis.
OperatorSum problem_hamiltonian(const AnnealingModel& m);

/// -sum_i X_i.
OperatorSum driver_hamiltonian(const AnnealingModel& m);

/// lambda * H_P + (1 - lambda) * H_V for lambda in [0, 1].
OperatorSum interpolated_hamiltonian(const AnnealingModel& m, double lambda);

}  // namespace agpsched
