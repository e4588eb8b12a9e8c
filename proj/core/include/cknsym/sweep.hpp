#pragma once

/// \file
/// Curve sweeps over p (CKN) or gamma (WLH) and their CSV / JSON encodings.
///
/// Numbers are written with 17 significant digits so every double round-trips.
/// Members that are undefined for a row are empty CSV fields / JSON nulls and
/// the reason goes to the row's `diagnostic` column.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cknsym/regions.hpp"

namespace cknsym {

struct CknCurveRow {
  double p = 0.0;
  double theta = 0.0;
  int d = 0;
  double vartheta = 0.0;
  std::optional<double> q_star;
  std::optional<double> beta;
  std::optional<double> n_coeff;
  std::optional<double> x_star;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> lambda2_approx;
  std::optional<double> lambda_star;
  std::optional<double> lambda_fs;
  std::string diagnostic;
};

struct WlhCurveRow {
  double gamma = 0.0;
  int d = 0;
  std::optional<double> n0;
  std::optional<double> x0_star;
  std::optional<double> lambda0;
  std::optional<double> lambda0_approx;
  std::optional<double> lambda_break;
  std::string diagnostic;
};

struct CknCurveOptions {
  int d = 5;
  double theta = 0.5;
  /// theta = vartheta(p, d) on every row; `theta` is then ignored.
  bool critical_theta = false;
  int n = 64;
  /// Worker threads; rows are assembled in input order regardless.
  unsigned threads = 1;
  Lambda1Options lambda1;
};

struct WlhCurveOptions {
  int d = 2;
  double gamma_min = 0.8;
  double gamma_max = 3.0;
  int n = 50;
  unsigned threads = 1;
};

/// p-grid of n points strictly inside the interval: lo + (hi - lo)(i + 1)/(n + 1).
std::vector<double> interior_grid(double lo, double hi, int n);

/// Throws DomainError if the admissible p-interval is empty or n < 1.
std::vector<CknCurveRow> ckn_curve(const CknCurveOptions& opts);

/// gamma_i = gamma_min + (gamma_max - gamma_min) i / (n - 1), endpoints included.
std::vector<WlhCurveRow> wlh_curve(const WlhCurveOptions& opts);

/// Fixed-width-free shortest form with 17 significant digits (printf "%.17g").
std::string format_number(double x);

std::string to_csv(const std::vector<CknCurveRow>& rows);
std::string to_csv(const std::vector<WlhCurveRow>& rows);
std::string to_json(const std::vector<CknCurveRow>& rows);
std::string to_json(const std::vector<WlhCurveRow>& rows);

/// Inverse of to_csv. Throws DomainError on a malformed document.
std::vector<CknCurveRow> parse_ckn_csv(std::string_view text);
std::vector<WlhCurveRow> parse_wlh_csv(std::string_view text);

inline constexpr std::string_view kCknCsvHeader =
    "p,theta,d,vartheta,q_star,beta,n_coeff,x_star,lambda1,lambda2,lambda2_approx,"
    "lambda_star,lambda_fs,diagnostic";
inline constexpr std::string_view kWlhCsvHeader =
    "gamma,d,n0,x0_star,lambda0,lambda0_approx,lambda_break,diagnostic";

}  // namespace cknsym
