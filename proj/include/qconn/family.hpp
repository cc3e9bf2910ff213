// Copyright 2026 The qconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qconn/distribution.hpp"
#include "qconn/pathopt.hpp"
#include "qconn/rng.hpp"

namespace qconn {

/// Ensemble-averaged QCM/QCF of a network family. Closed-form results are
/// exact; semi-analytic results combine a hop-length PMF with per-length
/// integrals over the edge distribution and, when those integrals are done
/// by Monte Carlo, carry a standard error.
struct EnsembleEstimate {
  enum class Method { closed_form, semi_analytic };

  double mean_qcm = 0.0;
  double mean_qcf = 0.0;
  double qcm_se = 0.0;
  double qcf_se = 0.0;
  Method method = Method::closed_form;
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 0;
};

constexpr const char* to_string(EnsembleEstimate::Method m) noexcept {
  return m == EnsembleEstimate::Method::closed_form ? "closed_form"
                                                    : "semi_analytic";
}

/// Complete topology, all edges at concurrence cbar: every optimal path is
/// the direct link, so the means are cbar (resp. 1) above threshold and 0
/// at or below it.
inline EnsembleEstimate mean_complete_homogeneous(double cbar, double eps) {
  detail::require(cbar >= 0.0 && cbar <= 1.0, errc::invalid_parameter,
                  "cbar must lie in [0,1]");
  detail::require(eps >= 0.0 && eps <= 1.0, errc::invalid_parameter,
                  "epsilon must lie in [0,1]");
  EnsembleEstimate e;
  if (cbar > eps) {
    e.mean_qcm = cbar;
    e.mean_qcf = 1.0;
  }
  return e;
}

/// Complete topology with uniform edge concurrence of mean cbar and
/// variance sigma2 (clipped as in ConcurrenceDistribution). With support
/// half-width s = sqrt(3 sigma2_eff):
///   eps above the support  -> (0, 0)
///   eps inside the support -> QCM = ((cbar+s)^2 - eps^2) / (4 s),
///                             QCF = (cbar + s - eps) / (2 s)
///   eps below the support  -> (cbar, 1)
inline EnsembleEstimate mean_complete_uniform(double cbar, double sigma2,
                                              double eps) {
  detail::require(eps >= 0.0 && eps <= 1.0, errc::invalid_parameter,
                  "epsilon must lie in [0,1]");
  const auto dist = ConcurrenceDistribution::uniform(cbar, sigma2);
  if (dist.effective_variance() == 0.0)
    return mean_complete_homogeneous(cbar, eps);
  const double s = std::sqrt(3.0 * dist.effective_variance());
  EnsembleEstimate e;
  if (eps > cbar + s) {
    return e;
  }
  if (eps < cbar - s) {
    e.mean_qcm = cbar;
    e.mean_qcf = 1.0;
    return e;
  }
  e.mean_qcm = ((cbar + s) * (cbar + s) - eps * eps) / (4.0 * s);
  e.mean_qcf = (cbar + s - eps) / (2.0 * s);
  return e;
}

/// Probability that a product of `ell` independent U(0,1) variables
/// strictly exceeds eps. With t = ln(1/eps),
///   P = 1 - eps * sum_{k=0}^{ell-1} t^k / k!
/// (the sum of ell unit exponentials falls below t). Serves as an exact
/// cross-check for the Monte Carlo integrator.
inline double product_exceedance_u01(double eps, std::int32_t ell) {
  detail::require(ell >= 1, errc::invalid_parameter,
                  "ell must be at least 1");
  detail::require(eps >= 0.0 && eps <= 1.0, errc::invalid_parameter,
                  "epsilon must lie in [0,1]");
  if (eps == 0.0) return 1.0;
  const double t = std::log(1.0 / eps);
  double term = 1.0, sum = 1.0;
  for (std::int32_t k = 1; k < ell; ++k) {
    term *= t / static_cast<double>(k);
    sum += term;
  }
  const double p = 1.0 - eps * sum;
  return std::min(1.0, std::max(0.0, p));
}

/// Mean QCM/QCF of a family from its hop-length PMF: for each path length
/// the constrained moment of the product of edge concurrences is taken and
/// the results are mixed by q(ell). Point-mass distributions evaluate
/// exactly; uniform ones use per-length Monte Carlo (products accumulated
/// in the log domain) with substream seeds derived from (seed, ell), and
/// the returned standard errors propagate the per-length sample variance
/// through the mixture. Disconnected pairs contribute zero.
inline EnsembleEstimate mean_from_pmf(const PathLengthPmf& pmf,
                                      const ConcurrenceDistribution& dist,
                                      double eps, std::uint64_t mc_samples,
                                      std::uint64_t seed,
                                      unsigned threads = 0) {
  pmf.validate();
  detail::require(eps >= 0.0 && eps <= 1.0, errc::invalid_parameter,
                  "epsilon must lie in [0,1]");
  const double log_eps = std::log(eps);

  EnsembleEstimate est;
  if (dist.kind() == ConcurrenceDistribution::Kind::delta) {
    const double log_c0 = std::log(dist.mean());
    for (const auto& [ell, mass] : pmf.q) {
      const double log_strength = static_cast<double>(ell) * log_c0;
      if (log_strength > log_eps) {
        est.mean_qcf += mass;
        est.mean_qcm += mass * std::exp(log_strength);
      }
    }
    est.method = EnsembleEstimate::Method::semi_analytic;
    return est;
  }

  detail::require(mc_samples >= 10000, errc::invalid_parameter,
                  "uniform integration needs at least 1e4 MC samples");
  struct LengthStats {
    double qcf = 0.0, qcm = 0.0, var_f = 0.0, var_m = 0.0;
  };
  std::vector<std::int32_t> lengths;
  std::vector<double> masses;
  for (const auto& [ell, mass] : pmf.q) {
    lengths.push_back(ell);
    masses.push_back(mass);
  }
  std::vector<LengthStats> stats(lengths.size());

  const double lo = dist.min_c(), hi = dist.max_c();
  detail::parallel_for(lengths.size(), threads, [&](std::size_t k) {
    const std::int32_t ell = lengths[k];
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(ell)));
    std::uint64_t pass = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < mc_samples; ++s) {
      double log_prod = 0.0;
      for (std::int32_t e = 0; e < ell; ++e)
        log_prod += std::log(rng.uniform(lo, hi));
      if (log_prod > log_eps) {
        ++pass;
        const double v = std::exp(log_prod);
        sum += v;
        sum_sq += v * v;
      }
    }
    const double n = static_cast<double>(mc_samples);
    LengthStats& st = stats[k];
    st.qcf = static_cast<double>(pass) / n;
    st.qcm = sum / n;
    st.var_f = st.qcf * (1.0 - st.qcf);
    st.var_m = std::max(0.0, sum_sq / n - st.qcm * st.qcm);
  });

  double var_qcm = 0.0, var_qcf = 0.0;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    est.mean_qcf += masses[k] * stats[k].qcf;
    est.mean_qcm += masses[k] * stats[k].qcm;
    var_qcf += masses[k] * masses[k] * stats[k].var_f /
               static_cast<double>(mc_samples);
    var_qcm += masses[k] * masses[k] * stats[k].var_m /
               static_cast<double>(mc_samples);
  }
  est.qcm_se = std::sqrt(var_qcm);
  est.qcf_se = std::sqrt(var_qcf);
  est.method = EnsembleEstimate::Method::semi_analytic;
  est.mc_samples = mc_samples;
  est.seed = seed;
  return est;
}

}  // namespace qconn
