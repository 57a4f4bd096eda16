#include "scatterbound/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace scatterbound {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<cplx> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2)
    throw std::invalid_argument("CubicSpline: need >= 2 matching nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("CubicSpline: nodes must be increasing");

  m_.assign(n, cplx(0.0, 0.0));
  if (n < 4) return;  // linear / natural fallback, m = 0 is fine for n = 2

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Tridiagonal system for m_1..m_{n-2}; not-a-knot eliminates m_0, m_{n-1}.
  const std::size_t k = n - 2;
  std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0);
  std::vector<cplx> rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t j = i - 1;
    lo[j] = h[i - 1] / 6.0;
    di[j] = (h[i - 1] + h[i]) / 3.0;
    up[j] = h[i] / 6.0;
    rhs[j] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
  }
  // m_0 = ((h0+h1) m_1 - h0 m_2) / h1  folded into the first row.
  di[0] += lo[0] * (h[0] + h[1]) / h[1];
  up[0] -= lo[0] * h[0] / h[1];
  lo[0] = 0.0;
  // m_{n-1} = ((h_{n-2}+h_{n-3}) m_{n-2} - h_{n-2} m_{n-3}) / h_{n-3}.
  const std::size_t e = k - 1;
  di[e] += up[e] * (h[n - 2] + h[n - 3]) / h[n - 3];
  lo[e] -= up[e] * h[n - 2] / h[n - 3];
  up[e] = 0.0;

  // Thomas solve.
  for (std::size_t j = 1; j < k; ++j) {
    const double f = lo[j] / di[j - 1];
    di[j] -= f * up[j - 1];
    rhs[j] -= f * rhs[j - 1];
  }
  std::vector<cplx> m(k);
  m[k - 1] = rhs[k - 1] / di[k - 1];
  for (std::size_t j = k - 1; j-- > 0;)
    m[j] = (rhs[j] - up[j] * m[j + 1]) / di[j];

  for (std::size_t j = 0; j < k; ++j) m_[j + 1] = m[j];
  m_[0] = ((h[0] + h[1]) * m_[1] - h[0] * m_[2]) / h[1];
  m_[n - 1] = ((h[n - 2] + h[n - 3]) * m_[n - 2] - h[n - 2] * m_[n - 3]) / h[n - 3];
}

std::size_t CubicSpline::locate(double r) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), r);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i > 0) --i;
  if (i + 2 > x_.size()) i = x_.size() - 2;
  return i;
}

CubicSpline::Eval CubicSpline::all(double r) const {
  const std::size_t i = locate(r);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - r) / h;
  const double b = (r - x_[i]) / h;
  Eval e;
  e.y = a * y_[i] + b * y_[i + 1] +
        ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
  e.dy = (y_[i + 1] - y_[i]) / h -
         (3.0 * a * a - 1.0) * (h / 6.0) * m_[i] +
         (3.0 * b * b - 1.0) * (h / 6.0) * m_[i + 1];
  e.d2y = a * m_[i] + b * m_[i + 1];
  return e;
}

}  // namespace scatterbound
