#include "gcf237/render.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "gcf237/interval.hpp"

namespace gcf237 {

namespace {

using Cx = std::complex<double>;

double dvalue(const LElem& x) { return eval_interval(x, 64).mid_double(); }

struct DMat {
  double a, b, c, d;
};

DMat dmat(const GroupElement& g) {
  return {dvalue(g.a()), dvalue(g.b()), dvalue(g.c()), dvalue(g.d())};
}

Cx moebius_apply(const DMat& m, Cx z) { return (m.a * z + m.b) / (m.c * z + m.d); }

struct Canvas {
  static constexpr double x0 = -2.5, x1 = 2.5, y0 = 0.0, y1 = 3.0;
  static constexpr double w = 1000, h = 600;
  static double px(double x) { return (x - x0) / (x1 - x0) * w; }
  static double py(double y) { return h - (y - y0) / (y1 - y0) * h; }
};

void sample_geodesic_segment(std::ostringstream& path, Cx z1, Cx z2, bool move_first) {
  const int N = 16;
  auto emit = [&](Cx z, bool move) {
    path << (move ? "M" : "L") << Canvas::px(z.real()) << " " << Canvas::py(z.imag()) << " ";
  };
  if (std::abs(z1.real() - z2.real()) < 1e-12) {
    if (move_first) emit(z1, true);
    emit(z2, false);
    return;
  }
  double m = (std::norm(z2) - std::norm(z1)) / (2 * (z2.real() - z1.real()));
  double r = std::abs(z1 - m);
  double a1 = std::atan2(z1.imag(), z1.real() - m);
  double a2 = std::atan2(z2.imag(), z2.real() - m);
  for (int k = 0; k <= N; ++k) {
    double t = a1 + (a2 - a1) * k / N;
    Cx z(m + r * std::cos(t), r * std::sin(t));
    if (k == 0) {
      if (move_first) emit(z, true);
      continue;
    }
    emit(z, false);
  }
}

}  // namespace

std::string render_svg(ExpansionSession& s, int tiles) {
  const HeptagonData& H = HeptagonData::get();
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::w << "\" height=\""
      << Canvas::h << "\" viewBox=\"0 0 " << Canvas::w << " " << Canvas::h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::array<Cx, 7> base;
  for (int i = 0; i < 7; ++i) {
    double x = dvalue(H.vertex[size_t(i)].x);
    double n = dvalue(H.vertex[size_t(i)].n);
    base[size_t(i)] = Cx(x, std::sqrt(std::max(0.0, n - x * x)));
  }

  // tiles B_k D for k = 0..tiles
  for (int k = 0; k <= tiles; ++k) {
    DMat m = dmat(s.B(k));
    std::array<Cx, 7> v;
    for (int i = 0; i < 7; ++i) v[size_t(i)] = moebius_apply(m, base[size_t(i)]);
    std::ostringstream path;
    for (int i = 0; i < 7; ++i)
      sample_geodesic_segment(path, v[size_t(i)], v[size_t((i + 1) % 7)], i == 0);
    path << "Z";
    svg << "<path class=\"heptagon\" d=\"" << path.str()
        << "\" fill=\"none\" stroke=\"#355\" stroke-width=\"1\"/>\n";
  }

  // the input geodesic
  {
    const OrientedGeodesic& g = s.input();
    std::ostringstream path;
    bool drawn = true;
    auto val = [&](const BoundaryPoint& p) { return p.eval(128).mid_double(); };
    if (g.alpha.is_infinity() || g.beta.is_infinity()) {
      double x = val(g.alpha.is_infinity() ? g.beta : g.alpha);
      path << "M" << Canvas::px(x) << " " << Canvas::py(0) << " L" << Canvas::px(x) << " "
           << Canvas::py(Canvas::y1) << " ";
    } else {
      double a = val(g.alpha), b = val(g.beta);
      double m = (a + b) / 2, r = std::fabs(a - b) / 2;
      if (r < 1e-9) {
        drawn = false;
      } else {
        const int N = 96;
        for (int k = 0; k <= N; ++k) {
          double t = M_PI * k / N;
          double x = m + r * std::cos(t), y = r * std::sin(t);
          path << (k == 0 ? "M" : "L") << Canvas::px(x) << " " << Canvas::py(y) << " ";
        }
      }
    }
    if (drawn)
      svg << "<path class=\"geodesic\" d=\"" << path.str()
          << "\" fill=\"none\" stroke=\"#b22\" stroke-width=\"1.5\"/>\n";
  }

  // labels: edges e_i at arc midpoints, vertices tau3 and the center tau7
  for (int i = 0; i < 7; ++i) {
    Cx mid = (base[size_t(i)] + base[size_t((i + 1) % 7)]) / 2.0;
    svg << "<text class=\"edge-label\" x=\"" << Canvas::px(mid.real()) << "\" y=\""
        << Canvas::py(mid.imag()) << "\" font-size=\"12\">e" << i << "</text>\n";
  }
  auto dot = [&](double x, double y, const std::string& label) {
    svg << "<circle cx=\"" << Canvas::px(x) << "\" cy=\"" << Canvas::py(y)
        << "\" r=\"2.5\" fill=\"#222\"/>\n";
    svg << "<text class=\"vertex-label\" x=\"" << Canvas::px(x) + 4 << "\" y=\""
        << Canvas::py(y) - 4 << "\" font-size=\"12\">" << label << "</text>\n";
  };
  dot(base[0].real(), base[0].imag(), "tau3");
  double x7 = dvalue(H.tau7.x);
  double n7 = dvalue(H.tau7.n);
  dot(x7, std::sqrt(std::max(0.0, n7 - x7 * x7)), "tau7");

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gcf237
