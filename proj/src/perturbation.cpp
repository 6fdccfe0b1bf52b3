#include "forestmetrics/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace forest {

namespace {

constexpr double kDenominatorGuard = 1e-14;

void check_delta(int n, const EdgeDelta& delta) {
  if (delta.k < 0 || delta.k >= n || delta.t < 0 || delta.t >= n)
    throw DomainError("edge endpoints out of range");
  if (delta.k == delta.t) throw DomainError("edge endpoints must be distinct");
  if (delta.eps == 0.0 || !std::isfinite(delta.eps))
    throw DomainError("eps must be nonzero");
}

double guarded_denominator(double rho_kt, double eps) {
  const double denom = rho_kt + 1.0 / eps;
  if (std::abs(denom) < kDenominatorGuard) {
    std::ostringstream msg;
    msg << "denominator rho_kt + 1/eps vanished (rho_kt=" << rho_kt
        << ", eps=" << eps << "); the edge delta is not valid";
    throw InternalError(msg.str());
  }
  return denom;
}

}  // namespace

WeightedMultigraph apply_edge_delta(const WeightedMultigraph& g,
                                    const EdgeDelta& delta) {
  check_delta(g.vertex_count(), delta);
  if (delta.eps > 0.0) {
    WeightedMultigraph out = g;
    out.add_edge(delta.k, delta.t, delta.eps);
    return out;
  }
  double need = -delta.eps;
  const double total = g.total_pair_weight(delta.k, delta.t);
  if (need > total + 1e-12 * std::max(1.0, total)) {
    std::ostringstream msg;
    msg << "removal of " << need << " exceeds available (k,t) weight " << total;
    throw DomainError(msg.str());
  }
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    const bool on_pair = (e.u == delta.k && e.v == delta.t) ||
                         (e.u == delta.t && e.v == delta.k);
    if (!on_pair || need <= 0.0) {
      kept.push_back(e);
      continue;
    }
    const double take = std::min(e.weight, need);
    need -= take;
    const double rest = e.weight - take;
    if (rest > 0.0) kept.push_back({e.u, e.v, rest});
  }
  return WeightedMultigraph(g.vertex_count(), std::move(kept));
}

Eigen::MatrixXd predict_q_increment(const AccessibilityMatrix& q,
                                    const DistanceMatrix& rho,
                                    const EdgeDelta& delta) {
  if (rho.kind != DistanceKind::adjusted_forest)
    throw DomainError("predict_q_increment expects adjusted forest distances");
  if (q.size() != rho.size()) throw DomainError("matrix sizes differ");
  check_delta(q.size(), delta);
  const double denom = guarded_denominator(rho.d(delta.k, delta.t), delta.eps);
  // dq_ij = alpha*(q_ik - q_it)*(q_jt - q_jk)/denom = -(alpha/denom)*u_i*u_j
  const Eigen::VectorXd u = q.q.col(delta.k) - q.q.col(delta.t);
  return (-q.alpha / denom) * (u * u.transpose());
}

Eigen::MatrixXd predict_rho_increment(const DistanceMatrix& rho,
                                      const EdgeDelta& delta) {
  if (rho.kind != DistanceKind::adjusted_forest)
    throw DomainError("predict_rho_increment expects adjusted forest distances");
  check_delta(rho.size(), delta);
  const double denom =
      4.0 * guarded_denominator(rho.d(delta.k, delta.t), delta.eps);
  const Eigen::VectorXd s = rho.d.col(delta.k) - rho.d.col(delta.t);
  const int n = rho.size();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double diff = s(i) - s(j);
      out(i, j) = -(diff * diff) / denom;
      out(j, i) = out(i, j);
    }
  }
  return out;
}

PerturbationResult predict_perturbation(const AccessibilityMatrix& q,
                                        const DistanceMatrix& rho,
                                        const EdgeDelta& delta) {
  PerturbationResult result;
  result.delta_q = predict_q_increment(q, rho, delta);
  result.delta_rho = predict_rho_increment(rho, delta);
  result.delta_d = result.delta_rho / (2.0 * q.alpha);
  result.ratio = 1.0 / (1.0 + delta.eps * rho.d(delta.k, delta.t));
  return result;
}

MetricState compute_metric_state(const WeightedMultigraph& g, double alpha) {
  MetricState state;
  state.graph = g;
  state.q = accessibility_matrix(g, alpha);
  state.d = forest_distance_matrix(state.q);
  state.rho = adjusted_forest_distance_matrix(state.q);
  return state;
}

CheckResult endpoint_reciprocal_identity(const DistanceMatrix& rho_before,
                                         const DistanceMatrix& rho_after,
                                         const EdgeDelta& delta, double tol) {
  if (rho_before.kind != DistanceKind::adjusted_forest ||
      rho_after.kind != DistanceKind::adjusted_forest)
    throw DomainError("endpoint identity expects adjusted forest distances");
  check_delta(rho_before.size(), delta);
  const double rb = rho_before.d(delta.k, delta.t);
  const double ra = rho_after.d(delta.k, delta.t);
  CheckResult check;
  check.max_defect = std::abs(1.0 / ra - 1.0 / rb - delta.eps);
  std::ostringstream detail;
  detail << "1/rho'_kt - 1/rho_kt - eps = " << (1.0 / ra - 1.0 / rb - delta.eps);
  if (delta.eps == 1.0) {
    const double lapida = std::abs((ra - rb) + rb * ra);
    check.max_defect = std::max(check.max_defect, lapida);
    detail << "; unit addition drho_kt + rho_kt*rho'_kt = "
           << ((ra - rb) + rb * ra);
  }
  check.passed = check.max_defect <= tol;
  check.detail = detail.str();
  return check;
}

double profile_ratio(const MetricState& before, const MetricState& after,
                     int k, int t, double tol, CheckResult* diagnostics) {
  const int n = before.q.size();
  if (after.q.size() != n) throw DomainError("matrix sizes differ");
  if (k < 0 || k >= n || t < 0 || t >= n || k == t)
    throw DomainError("invalid (k,t) pair");
  const double d_kt = before.d.d(k, t);
  const double dp_kt = after.d.d(k, t);
  const double rho_kt = before.rho.d(k, t);
  const double rhop_kt = after.rho.d(k, t);
  const double ratio = dp_kt / d_kt;
  // eps recovered from the endpoint lemma
  const double eps = 1.0 / rhop_kt - 1.0 / rho_kt;

  CheckResult check;
  double worst = 0.0;
  auto track = [&worst](double defect) { worst = std::max(worst, defect); };
  track(std::abs(rhop_kt - ratio * rho_kt) / std::max(1.0, rho_kt));
  track(std::abs(ratio - 1.0 / (1.0 + eps * rho_kt)));
  track(std::abs(ratio - (1.0 - eps * rhop_kt)));

  const ProfileVector tau_b = tau_profile(before.d, k, t);
  const ProfileVector tau_a = tau_profile(after.d, k, t);
  const ProfileVector pi_b = pi_profile(before.q, k, t);
  const ProfileVector pi_a = pi_profile(after.q, k, t);
  for (int i = 0; i < n; ++i) {
    if (std::abs(tau_b.values(i)) <= 1e-12 &&
        std::abs(tau_a.values(i)) <= 1e-12) {
      ++check.skipped;  // 0/0 quotient; the ratio is asserted only where defined
    } else {
      track(std::abs(tau_a.values(i) - ratio * tau_b.values(i)));
    }
    if (std::abs(pi_b.values(i)) <= 1e-12 &&
        std::abs(pi_a.values(i)) <= 1e-12) {
      ++check.skipped;
    } else {
      track(std::abs(pi_a.values(i) - ratio * pi_b.values(i)));
    }
  }
  check.max_defect = worst;
  check.passed = worst <= tol;
  {
    std::ostringstream detail;
    detail << "ratio " << ratio << ", max chain defect " << worst << ", "
           << check.skipped << " degenerate quotients skipped";
    check.detail = detail.str();
  }
  if (diagnostics != nullptr) *diagnostics = check;
  if (!check.passed)
    throw PropertyViolation("profile ratio chain violated: " + check.detail);
  return ratio;
}

CheckResult proportionality_check(const MetricState& before,
                                  const MetricState& after, int k, int t,
                                  double tol) {
  const int n = before.q.size();
  if (after.q.size() != n) throw DomainError("matrix sizes differ");
  if (k < 0 || k >= n || t < 0 || t >= n || k == t)
    throw DomainError("invalid (k,t) pair");
  const double d_kt = before.d.d(k, t);
  const double dp_kt = after.d.d(k, t);
  CheckResult check;
  for (int i = 0; i < n; ++i) {
    const double tau_defect = std::abs(
        (after.d.d(i, k) - after.d.d(i, t)) * d_kt -
        (before.d.d(i, k) - before.d.d(i, t)) * dp_kt);
    const double pi_defect = std::abs(
        (after.q.q(i, k) - after.q.q(i, t)) * d_kt -
        (before.q.q(i, k) - before.q.q(i, t)) * dp_kt);
    check.max_defect = std::max({check.max_defect, tau_defect, pi_defect});
  }
  check.passed = check.max_defect <= tol;
  std::ostringstream detail;
  detail << "max cross-multiplied proportionality defect " << check.max_defect;
  check.detail = detail.str();
  return check;
}

CheckResult increment_formulas_check(const MetricState& before,
                                     const MetricState& after,
                                     const EdgeDelta& delta, double tol) {
  const int n = before.q.size();
  check_delta(n, delta);
  if (after.q.size() != n) throw DomainError("matrix sizes differ");
  const double alpha = before.q.alpha;
  const double eps = delta.eps;
  const double forward = after.d.d(delta.k, delta.t) / before.d.d(delta.k, delta.t);
  const double backward = before.d.d(delta.k, delta.t) / after.d.d(delta.k, delta.t);
  const ProfileVector tau_b = tau_profile(before.d, delta.k, delta.t);
  const ProfileVector tau_a = tau_profile(after.d, delta.k, delta.t);
  const ProfileVector pi_b = pi_profile(before.q, delta.k, delta.t);
  const ProfileVector pi_a = pi_profile(after.q, delta.k, delta.t);

  CheckResult check;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dq = after.q.q(i, j) - before.q.q(i, j);
      const double dd2 = 2.0 * (after.d.d(i, j) - before.d.d(i, j));
      const double q1 = -alpha * eps * pi_b.values(i) * pi_b.values(j) * forward;
      const double q2 = -alpha * eps * pi_a.values(i) * pi_a.values(j) * backward;
      const double tb = tau_b.values(i) - tau_b.values(j);
      const double ta = tau_a.values(i) - tau_a.values(j);
      const double pb = pi_b.values(i) - pi_b.values(j);
      const double pa = pi_a.values(i) - pi_a.values(j);
      const double d1 = -alpha * eps * tb * tb * forward;
      const double d2 = -alpha * eps * ta * ta * backward;
      const double d3 = -alpha * eps * pb * pb * forward;
      const double d4 = -alpha * eps * pa * pa * backward;
      check.max_defect = std::max(
          {check.max_defect, std::abs(dq - q1), std::abs(dq - q2),
           std::abs(dd2 - d1), std::abs(dd2 - d2), std::abs(dd2 - d3),
           std::abs(dd2 - d4)});
    }
  }
  check.passed = check.max_defect <= tol;
  std::ostringstream detail;
  detail << "max increment-formula defect " << check.max_defect;
  check.detail = detail.str();
  return check;
}

CheckResult reciprocity_metamorphic_check(const WeightedMultigraph& g,
                                          double alpha, const EdgeDelta& delta,
                                          double tol) {
  check_delta(g.vertex_count(), delta);
  const MetricState s0 = compute_metric_state(g, alpha);
  const WeightedMultigraph g1 = apply_edge_delta(g, delta);
  const MetricState s1 = compute_metric_state(g1, alpha);
  const EdgeDelta reverse{delta.k, delta.t, -delta.eps};
  const WeightedMultigraph g2 = apply_edge_delta(g1, reverse);
  const MetricState s2 = compute_metric_state(g2, alpha);

  CheckResult check;
  const double round_trip =
      std::max({(s2.q.q - s0.q.q).cwiseAbs().maxCoeff(),
                (s2.d.d - s0.d.d).cwiseAbs().maxCoeff(),
                (s2.rho.d - s0.rho.d).cwiseAbs().maxCoeff()});
  const PerturbationResult forward = predict_perturbation(s0.q, s0.rho, delta);
  const PerturbationResult backward =
      predict_perturbation(s1.q, s1.rho, reverse);
  const double compose =
      std::max((forward.delta_q + backward.delta_q).cwiseAbs().maxCoeff(),
               (forward.delta_rho + backward.delta_rho).cwiseAbs().maxCoeff());
  check.max_defect = std::max(round_trip, compose);
  check.passed = check.max_defect <= tol;
  std::ostringstream detail;
  detail << "round-trip defect " << round_trip
         << ", predicted-increment composition defect " << compose;
  check.detail = detail.str();
  return check;
}

}  // namespace forest
