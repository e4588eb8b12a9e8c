#include "cknsym/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "cknsym/errors.hpp"
#include "cknsym/root_solver.hpp"

namespace cknsym {
namespace {

void add_note(std::string& diag, const std::string& note) {
  if (!diag.empty()) diag += "; ";
  diag += note;
}

template <typename Fn>
std::optional<double> attempt(std::string& diag, const char* name, Fn&& fn) {
  try {
    const double v = fn();
    if (std::isfinite(v)) return v;
    add_note(diag, std::string(name) + ": non-finite result");
  } catch (const Error& e) {
    add_note(diag, std::string(name) + ": " + e.what());
  }
  return std::nullopt;
}

template <typename Row>
std::vector<Row> run_rows(int n, unsigned threads, const std::function<Row(int)>& make) {
  std::vector<Row> rows(static_cast<std::size_t>(n));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) rows[i] = make(i);
    return rows;
  }
  std::atomic<int> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) rows[i] = make(i);
      });
    }
  }
  return rows;
}

CknCurveRow ckn_row(double p, const CknCurveOptions& opts) {
  CknCurveRow row;
  const int d = opts.d;
  row.p = p;
  row.d = d;
  row.vartheta = vartheta(p, d);
  row.theta = opts.critical_theta ? row.vartheta : opts.theta;
  const double theta = row.theta;
  std::string& diag = row.diagnostic;

  if (theta > (p - 2.0) / p) {
    row.q_star = q_star(theta, p);
    row.beta = beta_exponent(theta, p);
    row.n_coeff = attempt(diag, "n_coeff", [&] { return n_coeff(theta, p); });
  } else {
    add_note(diag, "theta <= (p-2)/p: q_star and N undefined");
  }
  if (theta > vartheta(p, 3) && theta < 1.0) {
    row.x_star = attempt(diag, "x_star", [&] {
      const RootResult r = x_star(theta, p);
      if (r.degenerate) add_note(diag, "x_star: degenerate root (N - 1 at rounding level)");
      return r.root;
    });
    row.lambda2_approx = attempt(diag, "lambda2_approx", [&] { return lambda_2_approx(theta, p, d); });
  }
  try {
    const LambdaStarResult star = lambda_star_detail(theta, p, d, opts.lambda1);
    row.lambda_star = star.value;
    row.lambda1 = star.lambda1;
    row.lambda2 = star.lambda2;
    add_note(diag, std::string("case ") + to_string(star.basis));
    if (!star.diagnostic.empty()) add_note(diag, star.diagnostic);
  } catch (const Error& e) {
    add_note(diag, std::string("lambda_star: ") + e.what());
  }
  row.lambda_fs = attempt(diag, "lambda_fs", [&] { return lambda_fs(theta, p, d); });
  return row;
}

WlhCurveRow wlh_row(double gamma, int d) {
  WlhCurveRow row;
  row.gamma = gamma;
  row.d = d;
  std::string& diag = row.diagnostic;
  if (gamma > 0.75) {
    row.n0 = attempt(diag, "n0", [&] { return n0_coeff(gamma); });
    row.x0_star = attempt(diag, "x0_star", [&] { return x0_star(gamma).root; });
    row.lambda0 = attempt(diag, "lambda0", [&] { return lambda_0(gamma, d); });
    row.lambda0_approx = attempt(diag, "lambda0_approx", [&] { return lambda_0_approx(gamma, d); });
    if (d >= 4 && gamma < d / 4.0) add_note(diag, "symmetry claim requires gamma >= d/4");
  } else {
    add_note(diag, "gamma <= 3/4: N0 and Lambda0 undefined");
  }
  if ((d == 2 && gamma > 0.5) || (d >= 3 && gamma >= d / 4.0)) {
    row.lambda_break = wlh_breaking_threshold(gamma, d);
  } else {
    add_note(diag, "breaking threshold not established for this (d, gamma)");
  }
  return row;
}

// ---- encoding -------------------------------------------------------------

std::string csv_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_text(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

std::string json_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("null");
}

// Splits one CSV document into records of fields (RFC 4180 quoting, LF endings).
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw DomainError("csv: unterminated quoted field");
  if (any) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("csv: malformed number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("csv: malformed integer '" + s + "'");
  }
  return v;
}

std::string join_header(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
  return out;
}

}  // namespace

std::vector<double> interior_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * (i + 1.0) / (n + 1.0);
  return grid;
}

std::vector<CknCurveRow> ckn_curve(const CknCurveOptions& opts) {
  if (opts.n < 1) throw DomainError("curve: n must be >= 1");
  if (opts.d < 2) throw DomainError("curve: dimension must be >= 2");
  PInterval range{2.0, p_max(opts.d)};
  if (!opts.critical_theta) range = admissible_p_interval(opts.theta, opts.d);
  const std::vector<double> grid = interior_grid(range.lo, range.hi, opts.n);
  return run_rows<CknCurveRow>(opts.n, opts.threads,
                               [&](int i) { return ckn_row(grid[i], opts); });
}

std::vector<WlhCurveRow> wlh_curve(const WlhCurveOptions& opts) {
  if (opts.n < 1) throw DomainError("curve: n must be >= 1");
  if (opts.d < 2) throw DomainError("curve: dimension must be >= 2");
  if (!(std::isfinite(opts.gamma_min) && std::isfinite(opts.gamma_max) &&
        opts.gamma_min <= opts.gamma_max)) {
    throw DomainError("curve: need finite gamma_min <= gamma_max");
  }
  auto gamma_at = [&](int i) {
    if (opts.n == 1) return opts.gamma_min;
    return opts.gamma_min + (opts.gamma_max - opts.gamma_min) * i / (opts.n - 1.0);
  };
  return run_rows<WlhCurveRow>(opts.n, opts.threads,
                               [&](int i) { return wlh_row(gamma_at(i), opts.d); });
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<CknCurveRow>& rows) {
  std::string out(kCknCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.p) + ',' + format_number(r.theta) + ',' + std::to_string(r.d) + ',' +
           format_number(r.vartheta) + ',' + csv_field(r.q_star) + ',' + csv_field(r.beta) + ',' +
           csv_field(r.n_coeff) + ',' + csv_field(r.x_star) + ',' + csv_field(r.lambda1) + ',' +
           csv_field(r.lambda2) + ',' + csv_field(r.lambda2_approx) + ',' +
           csv_field(r.lambda_star) + ',' + csv_field(r.lambda_fs) + ',' +
           csv_text(r.diagnostic) + '\n';
  }
  return out;
}

std::string to_csv(const std::vector<WlhCurveRow>& rows) {
  std::string out(kWlhCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_number(r.gamma) + ',' + std::to_string(r.d) + ',' + csv_field(r.n0) + ',' +
           csv_field(r.x0_star) + ',' + csv_field(r.lambda0) + ',' + csv_field(r.lambda0_approx) +
           ',' + csv_field(r.lambda_break) + ',' + csv_text(r.diagnostic) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<CknCurveRow>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += i ? ",\n  {" : "\n  {";
    out += "\"p\": " + format_number(r.p);
    out += ", \"theta\": " + format_number(r.theta);
    out += ", \"d\": " + std::to_string(r.d);
    out += ", \"vartheta\": " + format_number(r.vartheta);
    out += ", \"q_star\": " + json_field(r.q_star);
    out += ", \"beta\": " + json_field(r.beta);
    out += ", \"n_coeff\": " + json_field(r.n_coeff);
    out += ", \"x_star\": " + json_field(r.x_star);
    out += ", \"lambda1\": " + json_field(r.lambda1);
    out += ", \"lambda2\": " + json_field(r.lambda2);
    out += ", \"lambda2_approx\": " + json_field(r.lambda2_approx);
    out += ", \"lambda_star\": " + json_field(r.lambda_star);
    out += ", \"lambda_fs\": " + json_field(r.lambda_fs);
    out += ", \"diagnostic\": " + json_text(r.diagnostic) + "}";
  }
  out += rows.empty() ? "]\n" : "\n]\n";
  return out;
}

std::string to_json(const std::vector<WlhCurveRow>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += i ? ",\n  {" : "\n  {";
    out += "\"gamma\": " + format_number(r.gamma);
    out += ", \"d\": " + std::to_string(r.d);
    out += ", \"n0\": " + json_field(r.n0);
    out += ", \"x0_star\": " + json_field(r.x0_star);
    out += ", \"lambda0\": " + json_field(r.lambda0);
    out += ", \"lambda0_approx\": " + json_field(r.lambda0_approx);
    out += ", \"lambda_break\": " + json_field(r.lambda_break);
    out += ", \"diagnostic\": " + json_text(r.diagnostic) + "}";
  }
  out += rows.empty() ? "]\n" : "\n]\n";
  return out;
}

std::vector<CknCurveRow> parse_ckn_csv(std::string_view text) {
  const auto records = split_csv(text);
  if (records.empty() || join_header(records.front()) != kCknCsvHeader) {
    throw DomainError("csv: missing or unexpected CKN header");
  }
  std::vector<CknCurveRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 14) throw DomainError("csv: CKN row " + std::to_string(i) + " needs 14 fields");
    CknCurveRow r;
    r.p = parse_number(f[0]);
    r.theta = parse_number(f[1]);
    r.d = parse_int(f[2]);
    r.vartheta = parse_number(f[3]);
    r.q_star = parse_optional(f[4]);
    r.beta = parse_optional(f[5]);
    r.n_coeff = parse_optional(f[6]);
    r.x_star = parse_optional(f[7]);
    r.lambda1 = parse_optional(f[8]);
    r.lambda2 = parse_optional(f[9]);
    r.lambda2_approx = parse_optional(f[10]);
    r.lambda_star = parse_optional(f[11]);
    r.lambda_fs = parse_optional(f[12]);
    r.diagnostic = f[13];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<WlhCurveRow> parse_wlh_csv(std::string_view text) {
  const auto records = split_csv(text);
  if (records.empty() || join_header(records.front()) != kWlhCsvHeader) {
    throw DomainError("csv: missing or unexpected WLH header");
  }
  std::vector<WlhCurveRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 8) throw DomainError("csv: WLH row " + std::to_string(i) + " needs 8 fields");
    WlhCurveRow r;
    r.gamma = parse_number(f[0]);
    r.d = parse_int(f[1]);
    r.n0 = parse_optional(f[2]);
    r.x0_star = parse_optional(f[3]);
    r.lambda0 = parse_optional(f[4]);
    r.lambda0_approx = parse_optional(f[5]);
    r.lambda_break = parse_optional(f[6]);
    r.diagnostic = f[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace cknsym
