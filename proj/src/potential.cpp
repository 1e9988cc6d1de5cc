#include "vibcool/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vibcool/errors.hpp"
#include "vibcool/units.hpp"

namespace vibcool {

Potential Potential::morse(double d_e, double a, double r_e, double offset) {
  if (d_e <= 0) throw ConfigError("morse potential: d_e must be positive");
  if (a <= 0) throw ConfigError("morse potential: a must be positive");
  Potential p;
  p.kind_ = Kind::Morse;
  p.d_e_ = d_e;
  p.a_ = a;
  p.r_e_ = r_e;
  p.offset_ = offset;
  return p;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 4) {
    throw ConfigError("tabulated potential: need >= 4 matching (r, V) samples");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) {
      throw ConfigError("tabulated potential: r samples must be strictly increasing");
    }
  }
  Potential p;
  p.kind_ = Kind::Tabulated;
  p.tab_r_ = std::move(r);
  p.tab_v_ = std::move(v);

  // Natural cubic spline second derivatives (tridiagonal solve).
  const auto& x = p.tab_r_;
  const auto& y = p.tab_v_;
  const int n = static_cast<int>(x.size());
  std::vector<double> m(n, 0.0), u(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
    const double pden = sig * m[i - 1] + 2.0;
    m[i] = (sig - 1.0) / pden;
    u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / pden;
  }
  for (int i = n - 2; i >= 0; --i) m[i] = m[i] * m[i + 1] + u[i];
  p.tab_m_ = std::move(m);
  return p;
}

double Potential::value(double r) const {
  if (kind_ == Kind::Morse) {
    const double e = 1.0 - std::exp(-a_ * (r - r_e_));
    return offset_ + d_e_ * e * e;
  }
  const auto& x = tab_r_;
  if (r < x.front() || r > x.back()) {
    throw ConfigError("tabulated potential: r = " + std::to_string(r) +
                      " outside tabulated range [" + std::to_string(x.front()) +
                      ", " + std::to_string(x.back()) + "]");
  }
  const auto it = std::upper_bound(x.begin(), x.end(), r);
  const int hi = std::min<int>(static_cast<int>(it - x.begin()), static_cast<int>(x.size()) - 1);
  const int lo = hi - 1;
  const double h = x[hi] - x[lo];
  const double a = (x[hi] - r) / h;
  const double b = (r - x[lo]) / h;
  return a * tab_v_[lo] + b * tab_v_[hi] +
         ((a * a * a - a) * tab_m_[lo] + (b * b * b - b) * tab_m_[hi]) * h * h / 6.0;
}

Eigen::VectorXd Potential::sample(const SpatialGrid& grid) const {
  if (kind_ == Kind::Morse && !(r_e_ > grid.r_min() && r_e_ < grid.r_max())) {
    throw ConfigError("morse potential: r_e must lie inside the grid");
  }
  if (kind_ == Kind::Tabulated &&
      (grid.r_min() < tab_r_.front() || grid.r_max() > tab_r_.back())) {
    throw ConfigError("tabulated potential does not cover the grid range");
  }
  Eigen::VectorXd v(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i) v[i] = value(grid.point(i));
  if (!v.allFinite()) throw ConfigError("potential is unbounded on the grid");
  return v;
}

Potential Potential::load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential file: " + path);
  double r_scale = 1.0, e_scale = 1.0;
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    std::string comment;
    if (hash != std::string::npos) {
      comment = line.substr(hash + 1);
      line.erase(hash);
    }
    if (!comment.empty()) {
      std::istringstream cs(comment);
      std::string tag;
      cs >> tag;
      if (tag == "units:") {
        std::string ru, eu;
        cs >> ru >> eu;
        if (ru == "angstrom") r_scale = units::angstrom_to_bohr;
        else if (ru == "a0" || ru == "bohr") r_scale = 1.0;
        else throw ConfigError(path + ":" + std::to_string(lineno) +
                               ": unknown length unit '" + ru + "'");
        if (eu == "cm-1") e_scale = units::cm1_to_hartree;
        else if (eu == "hartree") e_scale = 1.0;
        else throw ConfigError(path + ":" + std::to_string(lineno) +
                               ": unknown energy unit '" + eu + "'");
      }
    }
    std::istringstream ls(line);
    double ri, vi;
    if (ls >> ri >> vi) {
      r.push_back(ri * r_scale);
      v.push_back(vi * e_scale);
    } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
  }
  return tabulated(std::move(r), std::move(v));
}

}  // namespace vibcool
