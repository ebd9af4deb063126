#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dp5/util.hpp"

namespace dp5 {

enum class FieldId { Q, Qi, Qm2, Qm3, Qm7, Qm11 };

// A supported base field: Q or one of the five norm-Euclidean imaginary
// quadratic fields (class number one, finite unit group, single archimedean
// place). Ring elements are x + y·ω in the standard integral basis, with
// ω² = wm + wt·ω and N(x + yω) = x² + wt·xy + nc·y². Over Q, y ≡ 0 and the
// norm is the element itself.
struct FieldSpec {
  FieldId id = FieldId::Q;
  std::string label;
  int degree = 1;  // d = [K:Q]
  int r1 = 1, r2 = 0;
  i64 disc = 1;          // Δ_K
  int class_number = 1;  // h_K
  int num_units = 2;     // |μ_K|
  double regulator = 1.0;
  double rho = 1.0;  // residue of ζ_K at s=1

  i64 dnum = 0;  // d in K = Q(√d); 0 for K = Q
  i64 wm = 0;
  int wt = 0;
  i64 nc = 0;

  std::array<std::array<i64, 2>, 6> units{};  // first num_units entries valid

  bool is_rational() const { return degree == 1; }
  // local degree of the unique archimedean place
  int dv() const { return degree; }

  // complex embedding of the basis element ω (upper half plane choice)
  std::complex<double> omega_embedding() const {
    double s = std::sqrt((double)(-dnum));
    if (wt) return {0.5, s / 2};
    return {0.0, s};
  }
};

inline double rho_from_invariants(int r1, int r2, double reg, int h, int mu, i64 disc) {
  const double pi = 3.14159265358979323846;
  return std::pow(2.0, r1) * std::pow(2 * pi, r2) * reg * h /
         (mu * std::sqrt((double)(disc < 0 ? -disc : disc)));
}

inline FieldSpec make_field(FieldId id) {
  FieldSpec F;
  F.id = id;
  switch (id) {
    case FieldId::Q:
      F.label = "Q";
      F.degree = 1;
      F.r1 = 1;
      F.r2 = 0;
      F.disc = 1;
      F.num_units = 2;
      F.dnum = 0;
      F.wm = 0;
      F.wt = 0;
      F.nc = 0;
      F.units = {{{1, 0}, {-1, 0}}};
      break;
    case FieldId::Qi:
      F.label = "Q(i)";
      F.dnum = -1;
      F.disc = -4;
      F.num_units = 4;
      F.wt = 0;
      F.units = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
      break;
    case FieldId::Qm2:
      F.label = "Q(sqrt-2)";
      F.dnum = -2;
      F.disc = -8;
      F.num_units = 2;
      F.wt = 0;
      F.units = {{{1, 0}, {-1, 0}}};
      break;
    case FieldId::Qm3:
      F.label = "Q(sqrt-3)";
      F.dnum = -3;
      F.disc = -3;
      F.num_units = 6;
      F.wt = 1;
      // powers of the sixth root of unity ω = (1+√-3)/2
      F.units = {{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
      break;
    case FieldId::Qm7:
      F.label = "Q(sqrt-7)";
      F.dnum = -7;
      F.disc = -7;
      F.num_units = 2;
      F.wt = 1;
      F.units = {{{1, 0}, {-1, 0}}};
      break;
    case FieldId::Qm11:
      F.label = "Q(sqrt-11)";
      F.dnum = -11;
      F.disc = -11;
      F.num_units = 2;
      F.wt = 1;
      F.units = {{{1, 0}, {-1, 0}}};
      break;
  }
  if (F.dnum != 0) {
    F.degree = 2;
    F.r1 = 0;
    F.r2 = 1;
    if (F.wt) {
      F.wm = (F.dnum - 1) / 4;
      F.nc = (1 - F.dnum) / 4;
    } else {
      F.wm = F.dnum;
      F.nc = -F.dnum;
    }
  }
  F.rho = rho_from_invariants(F.r1, F.r2, F.regulator, F.class_number, F.num_units, F.disc);
  return F;
}

inline FieldSpec make_field(const std::string& label) {
  auto is = [&](const char* a, const char* b = "", const char* c = "") {
    return label == a || label == b || label == c;
  };
  if (is("Q")) return make_field(FieldId::Q);
  if (is("Q(i)", "Qi", "Q(sqrt-1)")) return make_field(FieldId::Qi);
  if (is("Q(sqrt-2)", "Qm2")) return make_field(FieldId::Qm2);
  if (is("Q(sqrt-3)", "Qm3", "Q(w)")) return make_field(FieldId::Qm3);
  if (is("Q(sqrt-7)", "Qm7")) return make_field(FieldId::Qm7);
  if (is("Q(sqrt-11)", "Qm11")) return make_field(FieldId::Qm11);
  throw std::invalid_argument(
      "unsupported field '" + label +
      "' (supported: Q, Q(i), Q(sqrt-2), Q(sqrt-3), Q(sqrt-7), Q(sqrt-11))");
}

inline const std::array<FieldId, 6>& all_field_ids() {
  static const std::array<FieldId, 6> ids = {FieldId::Q,   FieldId::Qi,  FieldId::Qm2,
                                             FieldId::Qm3, FieldId::Qm7, FieldId::Qm11};
  return ids;
}

}  // namespace dp5
