#include "shapebern/shape.hpp"

#include <algorithm>
#include <string>

#include "shapebern/corrections.hpp"

namespace shapebern {

const char* to_string(ShapeQuery q) {
  switch (q) {
    case ShapeQuery::MonotoneIncreasing: return "monotone-increasing";
    case ShapeQuery::MonotoneDecreasing: return "monotone-decreasing";
    case ShapeQuery::Convex: return "convex";
    case ShapeQuery::Concave: return "concave";
  }
  return "?";
}

ShapeQuery shape_query_from_string(std::string_view name) {
  if (name == "monotone-increasing") return ShapeQuery::MonotoneIncreasing;
  if (name == "monotone-decreasing") return ShapeQuery::MonotoneDecreasing;
  if (name == "convex") return ShapeQuery::Convex;
  if (name == "concave") return ShapeQuery::Concave;
  throw std::invalid_argument("unknown shape query '" + std::string(name) + "'");
}

const char* to_string(Certificate::Status s) {
  switch (s) {
    case Certificate::Status::CertifiedByCoefficients: return "certified-by-coefficients";
    case Certificate::Status::CertifiedBySubdivision: return "certified-by-subdivision";
    case Certificate::Status::Refuted: return "refuted";
    case Certificate::Status::Unknown: return "unknown";
  }
  return "?";
}

bool coefficient_shape_test(const BernsteinPoly& p, ShapeQuery q) {
  const int n = p.degree();
  switch (q) {
    case ShapeQuery::MonotoneIncreasing:
    case ShapeQuery::MonotoneDecreasing: {
      if (n < 1) throw std::domain_error("coefficient_shape_test: degree must be >= 1");
      for (int k = 0; k < n; ++k) {
        Rational d = p.coeff(k + 1) - p.coeff(k);
        if (q == ShapeQuery::MonotoneIncreasing ? d < 0 : d > 0) return false;
      }
      return true;
    }
    case ShapeQuery::Convex:
    case ShapeQuery::Concave: {
      if (n < 2) throw std::domain_error("coefficient_shape_test: degree must be >= 2");
      for (int k = 0; k + 2 <= n; ++k) {
        Rational d = p.coeff(k + 2) - 2 * p.coeff(k + 1) + p.coeff(k);
        if (q == ShapeQuery::Convex ? d < 0 : d > 0) return false;
      }
      return true;
    }
  }
  throw std::logic_error("coefficient_shape_test: bad query");
}

namespace {

bool all_nonnegative(const BernsteinPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const Rational& c) { return c >= 0; });
}

struct NodeResult {
  enum class Kind { Certified, Refuted, Unknown } kind;
  int depth = 0;  // deepest level needed below this node
  Rational witness_x;
  Rational witness_value;
};

// depth-first, left before right; witnesses reported in global coordinates
NodeResult certify_segment(const BernsteinPoly& p, const Rational& lo, const Rational& hi,
                           int depth, int depth_cap) {
  if (all_nonnegative(p)) return {NodeResult::Kind::Certified, depth, {}, {}};
  if (depth >= depth_cap) return {NodeResult::Kind::Unknown, depth, {}, {}};
  auto [left, right] = subdivide(p);
  const Rational mid = (lo + hi) / 2;
  const Rational& mid_value = left.coeffs().back();  // = p at the segment midpoint
  if (mid_value < 0) return {NodeResult::Kind::Refuted, depth, mid, mid_value};
  NodeResult a = certify_segment(left, lo, mid, depth + 1, depth_cap);
  if (a.kind == NodeResult::Kind::Refuted) return a;
  NodeResult b = certify_segment(right, mid, hi, depth + 1, depth_cap);
  if (b.kind == NodeResult::Kind::Refuted) return b;
  if (a.kind == NodeResult::Kind::Unknown || b.kind == NodeResult::Kind::Unknown)
    return {NodeResult::Kind::Unknown, depth_cap, {}, {}};
  return {NodeResult::Kind::Certified, std::max(a.depth, b.depth), {}, {}};
}

}  // namespace

Certificate certify_nonnegative(const BernsteinPoly& p, int depth_cap) {
  if (depth_cap < 0) throw std::domain_error("certify_nonnegative: negative depth cap");
  Certificate cert;
  // endpoint values are the first and last coefficients
  if (p.coeffs().front() < 0) {
    cert.status = Certificate::Status::Refuted;
    cert.witness_x = Rational(0);
    cert.witness_value = p.coeffs().front();
    return cert;
  }
  if (p.coeffs().back() < 0) {
    cert.status = Certificate::Status::Refuted;
    cert.witness_x = Rational(1);
    cert.witness_value = p.coeffs().back();
    return cert;
  }
  if (all_nonnegative(p)) {
    cert.status = Certificate::Status::CertifiedByCoefficients;
    cert.depth = 0;
    return cert;
  }
  NodeResult r = certify_segment(p, Rational(0), Rational(1), 0, depth_cap);
  switch (r.kind) {
    case NodeResult::Kind::Certified:
      cert.status = Certificate::Status::CertifiedBySubdivision;
      cert.depth = r.depth;
      break;
    case NodeResult::Kind::Refuted:
      cert.status = Certificate::Status::Refuted;
      cert.depth = r.depth;
      cert.witness_x = std::move(r.witness_x);
      cert.witness_value = std::move(r.witness_value);
      break;
    case NodeResult::Kind::Unknown:
      cert.status = Certificate::Status::Unknown;
      cert.depth = depth_cap;
      break;
  }
  return cert;
}

Certificate certify_shape(const BernsteinPoly& p, ShapeQuery q, int depth_cap) {
  BernsteinPoly target;
  switch (q) {
    case ShapeQuery::MonotoneIncreasing:
      target = derivative(p);
      break;
    case ShapeQuery::MonotoneDecreasing:
      target = negate(derivative(p));
      break;
    case ShapeQuery::Convex:
      target = second_derivative(p);
      break;
    case ShapeQuery::Concave:
      target = negate(second_derivative(p));
      break;
  }
  Certificate cert = certify_nonnegative(target, depth_cap);
  cert.query = q;
  return cert;
}

const char* to_string(HypothesisId id) {
  switch (id) {
    case HypothesisId::Thm1m_a: return "Thm1m_a";
    case HypothesisId::Thm1m_b: return "Thm1m_b";
    case HypothesisId::Thm3m_a: return "Thm3m_a";
    case HypothesisId::Thm3m_b: return "Thm3m_b";
    case HypothesisId::PropPhiInc: return "PropPhiInc";
    case HypothesisId::PropPsiDec: return "PropPsiDec";
    case HypothesisId::PropTildeVarphi_a: return "PropTildeVarphi_a";
    case HypothesisId::PropTildeVarphi_b: return "PropTildeVarphi_b";
    case HypothesisId::Thm1c_a: return "Thm1c_a";
    case HypothesisId::Thm1c_b: return "Thm1c_b";
    case HypothesisId::Thm3c_a: return "Thm3c_a";
    case HypothesisId::Thm3c_b: return "Thm3c_b";
    case HypothesisId::PropConvexFloor: return "PropConvexFloor";
    case HypothesisId::PropConcaveFloor: return "PropConcaveFloor";
    case HypothesisId::PropConvexNearest: return "PropConvexNearest";
  }
  return "?";
}

HypothesisId hypothesis_from_string(std::string_view name) {
  static constexpr HypothesisId all[] = {
      HypothesisId::Thm1m_a,          HypothesisId::Thm1m_b,
      HypothesisId::Thm3m_a,          HypothesisId::Thm3m_b,
      HypothesisId::PropPhiInc,       HypothesisId::PropPsiDec,
      HypothesisId::PropTildeVarphi_a, HypothesisId::PropTildeVarphi_b,
      HypothesisId::Thm1c_a,          HypothesisId::Thm1c_b,
      HypothesisId::Thm3c_a,          HypothesisId::Thm3c_b,
      HypothesisId::PropConvexFloor,  HypothesisId::PropConcaveFloor,
      HypothesisId::PropConvexNearest};
  for (HypothesisId id : all) {
    if (name == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown hypothesis id '" + std::string(name) + "'");
}

namespace {

bool is_monotone_id(HypothesisId id) {
  switch (id) {
    case HypothesisId::Thm1m_a:
    case HypothesisId::Thm1m_b:
    case HypothesisId::Thm3m_a:
    case HypothesisId::Thm3m_b:
    case HypothesisId::PropPhiInc:
    case HypothesisId::PropPsiDec:
    case HypothesisId::PropTildeVarphi_a:
    case HypothesisId::PropTildeVarphi_b:
      return true;
    default:
      return false;
  }
}

// dual ids compare with flipped sign against negated margins
bool is_dual(HypothesisId id) {
  switch (id) {
    case HypothesisId::Thm1m_b:
    case HypothesisId::Thm3m_b:
    case HypothesisId::PropPsiDec:
    case HypothesisId::PropTildeVarphi_b:
    case HypothesisId::Thm1c_b:
    case HypothesisId::PropConcaveFloor:
      return true;
    case HypothesisId::Thm3c_b:
      return true;
    default:
      return false;
  }
}

}  // namespace

HypothesisResult check_hypothesis(const std::vector<Rational>& values, int n,
                                  HypothesisId id, unsigned entropy_bits) {
  if (static_cast<int>(values.size()) != n + 1)
    throw std::domain_error("check_hypothesis: need n+1 samples");
  if (n < 1) throw std::domain_error("check_hypothesis: need n >= 1");
  if (!is_integer(values.front()) || !is_integer(values.back()))
    throw std::domain_error("check_hypothesis: endpoints must be integers");

  const bool dual = is_dual(id);
  const std::vector<Integer> row = binomial_row(n);
  auto inv = [&row](int k) { return make_rational(1, row[static_cast<size_t>(k)]); };
  // passes iff diff >= margin (or <= -margin for the dual families)
  auto satisfied = [dual](const Rational& diff, const Rational& margin) {
    return dual ? diff <= -margin : diff >= margin;
  };

  HypothesisResult result;
  result.holds = true;

  if (is_monotone_id(id)) {
    std::optional<CorrectionTable> combined;
    if ((id == HypothesisId::Thm3m_a || id == HypothesisId::Thm3m_b) && n >= 3)
      combined = correction_grid(CorrectionKind::VarphiCombined, n);
    for (int k = 0; k < n; ++k) {
      const bool interior = (k >= 1 && k <= n - 2);
      Rational margin(0);
      switch (id) {
        case HypothesisId::Thm1m_a:
        case HypothesisId::Thm1m_b:
          margin = make_rational(1, n);
          break;
        case HypothesisId::PropPhiInc:
          if (interior) margin = inv(k + 1);
          break;
        case HypothesisId::PropPsiDec:
          if (interior) margin = inv(k);
          break;
        case HypothesisId::PropTildeVarphi_a:
        case HypothesisId::PropTildeVarphi_b:
          if (interior) margin = (inv(k) + inv(k + 1)) / 2;
          break;
        case HypothesisId::Thm3m_a:
        case HypothesisId::Thm3m_b:
          if (interior) margin = combined->increment(k);
          break;
        default:
          break;
      }
      Rational diff = values[static_cast<size_t>(k + 1)] - values[static_cast<size_t>(k)];
      if (!satisfied(diff, margin)) {
        result.holds = false;
        result.first_violation = k;
        return result;
      }
    }
    return result;
  }

  // convexity families
  if (n < 2) throw std::domain_error("check_hypothesis: convexity ids need n >= 2");
  if ((id == HypothesisId::Thm3c_a || id == HypothesisId::Thm3c_b) && n < 3)
    throw std::domain_error("check_hypothesis: Thm3c ids need n >= 3");

  for (int k = 0; k + 2 <= n; ++k) {
    Rational diff = values[static_cast<size_t>(k + 2)] -
                    2 * values[static_cast<size_t>(k + 1)] +
                    values[static_cast<size_t>(k)];
    if (id == HypothesisId::Thm1c_a || id == HypothesisId::Thm1c_b) {
      // conservative comparison against the enclosure of the entropy margin:
      // refine until the verdict is unambiguous, and fail closed otherwise
      unsigned bits = entropy_bits;
      for (;;) {
        Enclosure m = entropy_grid_second_difference(n, k, bits);
        bool pass = dual ? diff <= -m.upper : diff >= m.upper;
        bool fail = dual ? diff > -m.lower : diff < m.lower;
        if (pass) break;
        if (fail || bits >= kDefaultPrecisionCap) {
          result.holds = false;
          result.first_violation = k;
          return result;
        }
        bits *= 2;
      }
      continue;
    }
    Rational margin(0);
    const bool first = (k == 0);
    const bool last = (k == n - 2);
    switch (id) {
      case HypothesisId::Thm3c_a:
      case HypothesisId::Thm3c_b:
        margin = inv(k) + inv(k + 2);
        break;
      case HypothesisId::PropConvexFloor:
        // C(n,2) = C(n,n-2), so the first/last margins never conflict
        if (first) margin = inv(2);
        else if (last) margin = inv(n - 2);
        else margin = inv(k) + inv(k + 2);
        break;
      case HypothesisId::PropConcaveFloor:
        margin = 2 * inv(k + 1);
        break;
      case HypothesisId::PropConvexNearest:
        if (first) margin = (2 * inv(1) + inv(2)) / 2;
        else if (last) margin = (inv(n - 2) + 2 * inv(n - 1)) / 2;
        else margin = (inv(k) + 2 * inv(k + 1) + inv(k + 2)) / 2;
        break;
      default:
        throw std::logic_error("check_hypothesis: unhandled id");
    }
    if (!satisfied(diff, margin)) {
      result.holds = false;
      result.first_violation = k;
      return result;
    }
  }
  return result;
}

}  // namespace shapebern
