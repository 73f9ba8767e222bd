#include "certkit/sizes.hpp"

#include <stdexcept>

namespace certkit {

long long basis_count(int v, int D) {
  if (v < 1 || D < 0) throw std::invalid_argument("basis_count: need v >= 1, D >= 0");
  // C(v + D, v) built incrementally to stay in integer arithmetic
  long long out = 1;
  for (int i = 1; i <= v; ++i) out = out * (D + i) / i;
  return out;
}

SizeReport template_sizes(TemplateShape shape, int n, int d, int m,
                          const std::optional<Cover>& cover) {
  if (n < 1 || d < 0 || m < 0) throw std::invalid_argument("template_sizes: bad dimensions");
  int alphas = shape == TemplateShape::Split ? 2 : 1;

  long long a_gram = basis_count(2 * n + 1, d) * basis_count(2 * n + 1, d);
  long long a_mono = basis_count(2 * n + 1, 2 * d);

  // non-sparse: n-variate multiplier slots; semi-sparse: univariate rho slots
  SizeReport rep{shape, n, d, m, 0, 0, -1, 0, 0, -1};
  rep.gram_nonsparse = alphas * a_gram + m * basis_count(n, d) * basis_count(n, d);
  rep.mono_nonsparse = alphas * a_mono + m * basis_count(n, 2 * d);
  long long rho_gram = static_cast<long long>(1 + d) * (1 + d);
  long long rho_mono = 1 + 2 * d;
  rep.gram_semisparse = alphas * a_gram + m * rho_gram;
  rep.mono_semisparse = alphas * a_mono + m * rho_mono;

  if (cover) {
    rep.gram_fullysparse = m * rho_gram;
    rep.mono_fullysparse = m * rho_mono;
    for (const auto& clique : cover->cliques) {
      int arity = 2 * static_cast<int>(clique.size()) + 1;
      rep.gram_fullysparse += alphas * basis_count(arity, d) * basis_count(arity, d);
      rep.mono_fullysparse += alphas * basis_count(arity, 2 * d);
    }
  }
  return rep;
}

Cover rosenbrock_cover(int n) {
  if (n < 2) throw std::invalid_argument("rosenbrock_cover: need n >= 2");
  Cover cover;
  for (int i = 0; i + 1 < n; ++i) cover.cliques.push_back({i, i + 1});
  cover.radii.assign(n - 1, Scalar(1));
  // box constraints 1 - x_i, 1 + x_i: assign each to a clique containing x_i
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i) cover.assign.push_back(i + 1 < n ? i : n - 2);
  return cover;
}

std::string size_report_row(const SizeReport& rep) {
  auto cell = [](long long v) { return v < 0 ? std::string("-") : std::to_string(v); };
  return cell(rep.gram_nonsparse) + " " + cell(rep.gram_semisparse) + " " +
         cell(rep.gram_fullysparse) + " / " + cell(rep.mono_nonsparse) + " " +
         cell(rep.mono_semisparse) + " " + cell(rep.mono_fullysparse);
}

}  // namespace certkit
