#pragma once

#include <cstddef>
#include <vector>

#include "fl/grid.hpp"
#include "fl/kernel.hpp"
#include "fl/l1.hpp"
#include "fl/maximize.hpp"
#include "fl/norms.hpp"

namespace fl {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// beta = p / q with q <= 64, to within 1e-12. Throws ResolutionError otherwise.
struct Rational {
  long long p = 0;
  long long q = 1;
};
Rational rational_beta(double beta);

// Smallest multiple of 4 n q that is >= m_min: cell boundaries of the sign pattern
// cos(nt + beta pi/2) fall on nodes of such grids.
std::size_t aligned_grid(long long n, double beta, std::size_t m_min);

// pi sum_{k>=1} k psi(k+n) / (n (1 + 4 pi sum_{k>=n} psi(k))), absolute units.
// Throws DegenerateConstruction when the weighted tail vanishes.
double epsilon_bound(const PsiSpec& spec, long long n);

struct TStar {
  double t_star = 0.0;  // in T = [T0, T0 + 2pi), T0 = pi (1 - beta) / (2n)
  int k_star = 1;       // cell index in 1..2n
  double sign = 1.0;    // sign of Psi_{-beta,n}(t_star)
  Certified norm;       // sup |Psi_{-beta,n}|, absolute
};

// Argmax of |Psi_{-beta,n}| over T. m seeds the search grid, tol is absolute.
TStar locate_tstar(const KernelSpec& ks, std::size_t m, double tol);

struct EllStar {
  Interval interval;        // closed, inside the cell of t_star
  std::size_t m = 0;        // grid the endpoints live on
  std::size_t r_begin = 0;  // node offsets from T0: plateau nodes are [r_begin, r_end)
  std::size_t r_end = 0;
};

// Largest node run around t_star inside its cell on which the curvature bound certifies
// |Psi_{-beta,n}| > sup |Psi| - epsilon everywhere between the nodes. Doubles m up to
// three times before giving up with ConstructionError.
EllStar find_ell_star(const KernelSpec& ks, const TStar& ts, double epsilon, std::size_t m);

struct ExtremalConstruction {
  KernelSpec kspec;
  Rational beta_q;
  double t_star = 0.0;
  int k_star = 1;
  Certified norm;  // sup |Psi_{beta,n}|, absolute
  EllStar ell_star;
  double epsilon = 0.0;
  double e_target = 1.0;
  double plateau_height = 0.0;
  double off_height = 0.0;
  Bounded tail;  // absolute
  Bounded wt;    // absolute
};

// epsilon <= 0 selects min(epsilon_bound / 2, 1 / (4 pi)). m = 0 selects
// max(4096, 64 n) rounded up to an aligned grid.
ExtremalConstruction build_construction(const KernelSpec& ks, double e_target = 1.0,
                                        double epsilon = 0.0, std::size_t m = 0, double tol = 0.0);

// Constant pieces [a, b) covering T, value c on each.
struct Piece {
  double a = 0.0, b = 0.0, c = 0.0;
};
std::vector<Piece> phi_pieces(const ExtremalConstruction& c);
// Closed form of ||Phi||_1.
double phi_l1_exact(const ExtremalConstruction& c);

// Samples of Phi at 2 pi j / m. m must be a multiple of the construction grid.
GridFunction build_phi(const ExtremalConstruction& c, std::size_t m);

// F = J(Phi - a0/2) at 2 pi j / m, and the deviation F - S_{n-1}(F), both through exact
// antiderivatives of the kernel on every piece.
GridFunction build_F(const ExtremalConstruction& c, std::size_t m);
GridFunction deviation_F(const ExtremalConstruction& c, std::size_t m);

struct DeviationValue {
  double value = 0.0;
  double err = 0.0;
};
DeviationValue deviation_at(const ExtremalConstruction& c, double x);

// sup_x |F(x) - S_{n-1}(F; x)|, absolute; tol absolute (0 picks a default).
Certified deviation_sup(const ExtremalConstruction& c, double tol = 0.0);

struct SharpnessReport {
  double phi_l1 = 0.0;           // closed form
  L1ApproxResult best;           // grid problem on Phi
  std::size_t grid_m = 0;
  DeviationValue rho0;           // rho_n(F; 0)
  Certified rho_sup;             // ||rho_n(F)||_C
  double lower_bound = 0.0;      // ((1/pi) tail - (2/n) wt) e_target
  double upper_bound = 0.0;      // (1/pi) tail e_target
  double pairing_bound = 0.0;    // e_target ((1/pi) ||Psi|| - eps (4 ||Psi|| + 1/pi))
  ThetaEstimate xi;              // equality form with band [-2, 0]
};

SharpnessReport sharpness(const ExtremalConstruction& c, std::size_t m, double l1_tol = 1e-9);

void to_json(nlohmann::json& j, const Interval& i);
void to_json(nlohmann::json& j, const ExtremalConstruction& c);
void to_json(nlohmann::json& j, const SharpnessReport& r);

}  // namespace fl
