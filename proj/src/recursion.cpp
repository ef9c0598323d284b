#include "bruhat/recursion.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace bruhat::recursion {

using coxeter::bruhat_interval;
using coxeter::bruhat_leq;
using coxeter::Interval;
using flags::CdPolynomial;
using flags::Word;
using poset::GradedPoset;

namespace {

void require_ascents(const Element& u, const Element& w, int s) {
  const auto& sys = u.system();
  if (!sys || !w.system() || !(*sys == *w.system()))
    throw std::invalid_argument("elements belong to different systems");
  if (s < 0 || s >= sys->rank()) throw std::invalid_argument("generator index out of range");
  if (sys->multiply(u, s).length() < u.length())
    throw std::invalid_argument("s must lengthen u");
  if (sys->multiply(w, s).length() < w.length())
    throw std::invalid_argument("s must lengthen w");
  if (!bruhat_leq(u, w)) throw std::invalid_argument("u is not below w in Bruhat order");
}

GradedPoset two_chain(int s) {
  return GradedPoset({0, 1}, {{0, 1}}, {"e", std::to_string(s + 1)});
}

/* max(v, vs) as Bruhat-interval elements. */
Element raised(const Element& v, int s) {
  Element vs = v.system()->multiply(v, s);
  return vs.length() > v.length() ? vs : v;
}

bool fibers_agree(const GradedPoset& domain, const std::vector<int>& map,
                  const std::vector<std::vector<int>>& expected) {
  std::vector<std::vector<int>> actual(expected.size());
  for (int e = 0; e < domain.size(); ++e) actual[map[e]].push_back(e);
  for (auto& f : actual) std::sort(f.begin(), f.end());
  return actual == expected;
}

}  // namespace

ProjectionResult eta(const Element& u, const Element& w, int s) {
  require_ascents(u, w, s);
  const auto sys = u.system();

  ProjectionResult out;
  out.base = bruhat_interval(u, w);
  out.domain = product(out.base.poset, two_chain(s));
  out.target = bruhat_interval(u, sys->multiply(w, s));

  int nb = static_cast<int>(out.base.elements.size());
  out.map.assign(2 * nb, -1);
  for (int i = 0; i < nb; ++i) {
    const Element& v = out.base.elements[i];
    auto at0 = out.target.index_of(v);
    auto at1 = out.target.index_of(raised(v, s));
    if (!at0 || !at1) throw std::logic_error("projection image escaped the target interval");
    out.map[2 * i + 0] = *at0;
    out.map[2 * i + 1] = *at1;
  }
  out.order_projection = is_order_projection(out.domain, out.target.poset, out.map);

  std::vector<std::vector<int>> expected(out.target.elements.size());
  for (std::size_t j = 0; j < out.target.elements.size(); ++j) {
    const Element& t = out.target.elements[j];
    Element ts = sys->multiply(t, s);
    auto tid = out.base.index_of(t);
    if (ts.length() > t.length()) {
      if (tid) expected[j].push_back(2 * *tid + 0);
    } else {
      auto tsid = out.base.index_of(ts);
      if (tid) expected[j].push_back(2 * *tid + 0);
      if (tsid) expected[j].push_back(2 * *tsid + 1);
      if (tid) expected[j].push_back(2 * *tid + 1);
    }
    std::sort(expected[j].begin(), expected[j].end());
  }
  out.fibers_match = fibers_agree(out.domain, out.map, expected);
  return out;
}

ProjectionResult theta(const Element& u, const Element& w, int s) {
  require_ascents(u, w, s);
  const auto sys = u.system();
  Element us = sys->multiply(u, s);
  if (!bruhat_leq(us, w)) throw std::invalid_argument("us must lie in the interval");

  ProjectionResult out;
  out.base = bruhat_interval(u, w);
  poset::ShaveResult sh = shave(out.base.poset, *out.base.index_of(us));
  out.domain = sh.poset;
  out.target = bruhat_interval(us, sys->multiply(w, s));

  out.map.assign(out.domain.size(), -1);
  for (int e = 0; e < out.domain.size(); ++e) {
    Element image;
    auto [pid, part] = sh.origin[e];
    if (e == sh.bottom) image = us;
    else if (part == 0) image = out.base.elements[pid];
    else image = raised(out.base.elements[pid], s);
    auto ti = out.target.index_of(image);
    if (!ti) throw std::logic_error("projection image escaped the target interval");
    out.map[e] = *ti;
  }
  out.order_projection = is_order_projection(out.domain, out.target.poset, out.map);

  // Reverse lookup (interval id, part) -> domain id; the adjoined bottom sits
  // at (id of u, 0).
  std::vector<std::array<int, 2>> rev(out.base.elements.size(), {-1, -1});
  for (int e = 0; e < out.domain.size(); ++e) rev[sh.origin[e].first][sh.origin[e].second] = e;

  std::vector<std::vector<int>> expected(out.target.elements.size());
  for (std::size_t j = 0; j < out.target.elements.size(); ++j) {
    const Element& t = out.target.elements[j];
    if (t == us) {
      expected[j].push_back(sh.bottom);
      continue;
    }
    Element ts = sys->multiply(t, s);
    auto tid = out.base.index_of(t);
    if (ts.length() > t.length()) {
      if (tid && rev[*tid][0] >= 0) expected[j].push_back(rev[*tid][0]);
    } else {
      auto tsid = out.base.index_of(ts);
      if (tid && rev[*tid][0] >= 0 && *tid != *out.base.index_of(u))
        expected[j].push_back(rev[*tid][0]);
      if (tsid && rev[*tsid][1] >= 0) expected[j].push_back(rev[*tsid][1]);
      if (tid && rev[*tid][1] >= 0) expected[j].push_back(rev[*tid][1]);
    }
    std::sort(expected[j].begin(), expected[j].end());
  }
  out.fibers_match = fibers_agree(out.domain, out.map, expected);
  return out;
}

ZippingSequence zipping_sequence(const Element& u, const Element& w, int s,
                                 Variant variant) {
  require_ascents(u, w, s);
  const auto sys = u.system();
  Element us = sys->multiply(u, s);
  Element ws = sys->multiply(w, s);
  if (variant == Variant::shaved) {
    if (!bruhat_leq(us, w)) throw std::invalid_argument("us must lie in the interval");
    if (w.length() - u.length() < 2)
      throw std::invalid_argument("interval too short to shave");
  }

  Interval base0 = bruhat_interval(u, w);
  GradedPoset prod = product(base0.poset, two_chain(s));
  auto pid = [&](const Element& v, int part) { return 2 * *base0.index_of(v) + part; };

  ZippingSequence out;
  out.variant = variant;
  out.u = u;
  out.w = w;
  out.s = s;
  out.target = bruhat_interval(variant == Variant::interval ? u : us, ws);

  // Interior elements shortened by s, in rank order (ties by (length, repr)).
  std::vector<Element> vlist;
  for (const Element& v : base0.elements)
    if (v != u && v != w && sys->multiply(v, s).length() < v.length()) vlist.push_back(v);

  std::vector<int> cur(prod.size());
  for (int i = 0; i < prod.size(); ++i) cur[i] = i;
  GradedPoset p = prod;

  if (variant == Variant::shaved) {
    // Leading zip: merge (us,1) with (u,s) and cut to the interval over it.
    poset::ZipResult zr = poset::zip(p, pid(us, 0), pid(u, 1), pid(us, 1));
    poset::SubPoset cut =
        closed_interval(zr.poset, zr.merged, zr.old_to_new[pid(w, 1)]);
    std::vector<int> inv(zr.poset.size(), -1);
    for (std::size_t i = 0; i < cut.orig.size(); ++i) inv[cut.orig[i]] = static_cast<int>(i);
    for (int i = 0; i < prod.size(); ++i) {
      int t = zr.old_to_new[i];
      cur[i] = t < 0 ? -1 : inv[t];
    }
    p = cut.poset;
    if (!vlist.empty() && vlist.front() == us) vlist.erase(vlist.begin());
  }
  out.base = p;
  std::vector<int> cur0 = cur;  // product ids -> base ids

  for (const Element& v : vlist) {
    Element vs = sys->multiply(v, s);
    int x = cur[pid(v, 0)], y = cur[pid(vs, 1)], z = cur[pid(v, 1)];
    if (x < 0 || y < 0 || z < 0) throw std::logic_error("zipper element already consumed");

    poset::ZipperCheck check = is_zipper(p, x, y, z);
    if (!check.ok) throw std::logic_error("zipping step is not a zipper: " + check.reason);
    if (!check.proper) throw std::logic_error("zipping step is not proper");

    // The step leaves the interval below (v,1) and the one above (v,s)
    // untouched: both must match their images in the base poset.
    if (!is_isomorphic(closed_interval(p, p.bottom(), x).poset,
                       closed_interval(out.base, out.base.bottom(), cur0[pid(v, 0)]).poset))
      throw std::logic_error("zipping step disturbed the interval below the zipper");
    if (!is_isomorphic(closed_interval(p, z, cur[pid(w, 1)]).poset,
                       closed_interval(out.base, cur0[pid(v, 1)], cur0[pid(w, 1)]).poset))
      throw std::logic_error("zipping step disturbed the interval above the zipper");

    poset::ZipResult zr = poset::zip(p, x, y, z);
    for (int& c : cur)
      if (c >= 0) c = zr.old_to_new[c];
    out.steps.push_back(ZipStep{v, x, y, z, zr.poset, std::move(zr.old_to_new), zr.merged});
    p = std::move(zr.poset);
  }

  auto iso = isomorphism(p, out.target.poset);
  if (!iso) throw std::logic_error("zipping sequence missed the target interval");
  out.final_iso = std::move(*iso);
  return out;
}

/****************************************************************************

  The cd-index recursion.

****************************************************************************/

std::size_t CdEngine::PairHash::operator()(const std::pair<Element, Element>& p) const {
  std::size_t h = p.first.hash();
  return h ^ (p.second.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

CdEngine::CdEngine(coxeter::SystemPtr sys, DescentPolicy policy)
    : sys_(std::move(sys)), policy_(policy) {
  if (!sys_) throw std::invalid_argument("engine needs a system");
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

int CdEngine::pick_descent(const Element& w) const {
  std::vector<int> descents = sys_->right_descents(w);
  if (descents.empty()) throw std::invalid_argument("identity has no descent");
  switch (policy_.kind) {
    case DescentPolicy::Kind::smallest: return descents.front();
    case DescentPolicy::Kind::largest: return descents.back();
    case DescentPolicy::Kind::random:
      return descents[splitmix64(w.hash() ^ (policy_.seed * 0x9e3779b97f4a7c15ull)) %
                      descents.size()];
  }
  throw std::logic_error("unreachable");
}

const Interval& CdEngine::interval(const Element& u, const Element& w) {
  auto key = std::make_pair(u, w);
  auto it = intervals_.find(key);
  if (it != intervals_.end()) return it->second;
  if (intervals_.size() >= 20000) intervals_.clear();  // bound the cache
  return intervals_.emplace(std::move(key), bruhat_interval(u, w)).first->second;
}

/* Interior elements of [u, w] shortened on the right by s. Copied out so the
   interval cache stays free to evict. */
static std::vector<Element> shortened_interior(const Interval& iv, int s) {
  std::vector<Element> out;
  const auto& sys = iv.system;
  for (const Element& v : iv.elements)
    if (v != iv.u && v != iv.w && sys->multiply(v, s).length() < v.length())
      out.push_back(v);
  return out;
}

CdPolynomial CdEngine::cd_index(const Element& u, const Element& w) {
  auto key = std::make_pair(u, w);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (!bruhat_leq(u, w)) throw std::invalid_argument("u is not below w in Bruhat order");
  int gap = w.length() - u.length();
  if (gap <= 1) {
    CdPolynomial one = CdPolynomial::one();
    memo_.emplace(std::move(key), one);
    return one;
  }

  int s = pick_descent(w);
  Element W = sys_->multiply(w, s);
  Element us = sys_->multiply(u, s);
  CdPolynomial d = CdPolynomial::monomial(Word{1, 1});

  CdPolynomial res;
  if (us.length() > u.length()) {
    res = pyramid_cd(cd_index(u, W));
    if (bruhat_leq(us, W))
      for (const Element& v : shortened_interior(interval(u, W), s))
        res -= cd_index(u, v) * d * cd_index(v, W);
  } else {
    Element under = us;  // u with the descent stripped
    if (!bruhat_leq(u, W)) {
      res = cd_index(under, W);
    } else {
      res = cd_index(under, W) + cd_derivation(cd_index(u, W));
      for (const Element& v : shortened_interior(interval(u, W), s))
        res -= cd_index(u, v) * d * cd_index(v, W);
    }
  }
  memo_.emplace(std::move(key), res);
  return res;
}

CdPolynomial CdEngine::cd_index_half(const Element& u, const Element& w) {
  if (!bruhat_leq(u, w)) throw std::invalid_argument("u is not below w in Bruhat order");
  if (w.length() - u.length() <= 1) return CdPolynomial::one();

  int s = pick_descent(w);
  Element W = sys_->multiply(w, s);
  Element us = sys_->multiply(u, s);
  CdPolynomial c = CdPolynomial::monomial(Word{1, 0});
  CdPolynomial d = CdPolynomial::monomial(Word{1, 1});

  auto signed_sum = [&](CdPolynomial acc) {
    const Interval& iv = interval(u, W);
    std::vector<Element> interior;
    for (const Element& v : iv.elements)
      if (v != u && v != W) interior.push_back(v);
    for (const Element& v : interior)
      acc += (cd_index(u, v) * d * cd_index(v, W)).scaled(coxeter::sigma(v, s));
    return acc;
  };

  if (us.length() > u.length()) {
    CdPolynomial B = cd_index(u, W);
    return signed_sum(B * c + c * B).halved();
  }
  Element under = us;
  if (!bruhat_leq(u, W)) return cd_index(under, W);
  CdPolynomial B = cd_index(u, W);
  return cd_index(under, W) + signed_sum(B * c - c * B).halved();
}

CdPolynomial cd_index_interval(const Element& u, const Element& w, Method method) {
  switch (method) {
    case Method::bruteforce: {
      Interval iv = bruhat_interval(u, w);
      return iv.poset.size() == 1 ? CdPolynomial::one() : flags::cd_index(iv.poset);
    }
    case Method::recursion:
      return CdEngine(u.system()).cd_index(u, w);
    case Method::both: {
      CdPolynomial brute = cd_index_interval(u, w, Method::bruteforce);
      CdPolynomial rec = cd_index_interval(u, w, Method::recursion);
      if (!(brute == rec))
        throw std::logic_error("recursion disagrees with enumeration on [" + u.str() +
                               ", " + w.str() + "]: " + rec.str() + " vs " + brute.str());
      return brute;
    }
  }
  throw std::logic_error("unreachable");
}

Json RecursionReport::to_json() const {
  Json ranks = Json::array();
  for (const auto& r : per_rank)
    ranks.push_back(Json{{"rank", r.rank},
                         {"intervals", r.intervals},
                         {"min_coeff", r.min_coeff},
                         {"max_coeff", r.max_coeff}});
  return Json{{"group", group},
              {"pairs", pairs},
              {"per_rank", ranks},
              {"mismatches", mismatches},
              {"ok", ok()}};
}

RecursionReport verify_recursion(const coxeter::SystemPtr& sys, int max_len,
                                 bool inject_fault) {
  int len = max_len;
  if (sys->backend() == coxeter::Backend::symmetric)
    len = sys->degree() * (sys->degree() - 1) / 2;
  std::vector<Element> elements = coxeter::enumerate_elements(sys, len);

  CdEngine engine(sys);
  RecursionReport report;
  report.group = sys->describe();
  std::map<int, RankStats> stats;
  bool faulted = false;

  for (const Element& u : elements)
    for (const Element& w : elements) {
      if (!bruhat_leq(u, w)) continue;
      ++report.pairs;
      int gap = w.length() - u.length();

      CdPolynomial brute = gap == 0 ? CdPolynomial::one()
                                    : flags::cd_index(engine.interval(u, w).poset);
      CdPolynomial rec = engine.cd_index(u, w);
      if (inject_fault && !faulted && gap >= 2) {
        rec += CdPolynomial::monomial(Word{static_cast<std::uint32_t>(gap - 1), 0});
        faulted = true;
      }
      CdPolynomial half = engine.cd_index_half(u, w);

      if (!(rec == brute) || !(half == brute)) {
        if (report.mismatches.size() < 20)
          report.mismatches.push_back(Json{{"u", u.str()},
                                           {"w", w.str()},
                                           {"bruteforce", brute.str()},
                                           {"recursion", rec.str()},
                                           {"half_form", half.str()}});
      }

      RankStats& rs = stats[gap];
      rs.rank = gap;
      if (rs.intervals == 0) {
        rs.min_coeff = rs.max_coeff = brute.terms().begin()->second;
      }
      ++rs.intervals;
      for (const auto& [word, coeff] : brute.terms()) {
        rs.min_coeff = std::min(rs.min_coeff, coeff);
        rs.max_coeff = std::max(rs.max_coeff, coeff);
      }
    }

  for (const auto& [rank, rs] : stats) report.per_rank.push_back(rs);
  return report;
}

}  // namespace bruhat::recursion
