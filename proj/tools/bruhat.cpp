#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bruhat/constructions.hpp"
#include "bruhat/coxeter.hpp"
#include "bruhat/errors.hpp"
#include "bruhat/flags.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/recursion.hpp"

namespace {

using bruhat::NotInCdSpanError;
using bruhat::OverflowError;
using bruhat::ResourceCapError;
using Json = nlohmann::ordered_json;
namespace cox = bruhat::coxeter;
namespace flg = bruhat::flags;
namespace pos = bruhat::poset;
namespace rec = bruhat::recursion;
namespace con = bruhat::constructions;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitResource = 3;

struct Common {
  std::string group = "sym:4";
  int max_length = 12;
  long long budget = cox::kDefaultBudget;
  std::string out;
  bool long_run = false;
  bool all = false;
};

void add_common(CLI::App* sub, Common& c, bool with_long = false) {
  sub->add_option("--group", c.group, "group: sym:N, universal:R, or matrix:PATH")
      ->capture_default_str();
  sub->add_option("--max-length", c.max_length,
                  "length cutoff for infinite groups (and the generic word cap)")
      ->capture_default_str();
  sub->add_option("--budget", c.budget, "cap on elements enumerated per interval or listing")
      ->capture_default_str();
  sub->add_option("--out", c.out, "write the JSON report to this file instead of stdout");
  if (with_long) {
    sub->add_flag("--long", c.long_run, "allow the large scopes (sym:6 and up)");
    sub->add_flag("--all", c.all,
                  "scan the whole group (the default for sym:N; an error for "
                  "infinite groups)");
  }
}

cox::SystemPtr make_system(const Common& c) {
  auto colon = c.group.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("group must look like sym:N, universal:R, or matrix:PATH");
  std::string kind = c.group.substr(0, colon);
  std::string rest = c.group.substr(colon + 1);
  auto as_int = [&](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number in group '" + c.group + "'");
    }
  };
  if (kind == "sym") return cox::CoxeterSystem::symmetric(as_int(rest));
  if (kind == "universal") return cox::CoxeterSystem::universal(as_int(rest));
  if (kind == "matrix") {
    std::ifstream f(rest);
    if (!f) throw std::invalid_argument("cannot read matrix file '" + rest + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return cox::CoxeterSystem::generic(cox::CoxeterMatrix::parse(buf.str()), c.max_length);
  }
  throw std::invalid_argument("unknown group kind '" + kind + "'");
}

void require_long_for_big_scopes(const cox::SystemPtr& sys, const Common& c) {
  if (sys->backend() == cox::Backend::symmetric && sys->degree() >= 6 && !c.long_run)
    throw ResourceCapError("this scope needs --long");
  if (c.all && sys->backend() != cox::Backend::symmetric)
    throw std::invalid_argument("--all only makes sense for the finite groups (sym:N)");
}

void emit(const Json& j, const Common& c) {
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::invalid_argument("cannot open output file '" + c.out + "'");
  f << text;
}

rec::Method parse_method(const std::string& m) {
  if (m == "bruteforce") return rec::Method::bruteforce;
  if (m == "recursion") return rec::Method::recursion;
  if (m == "both") return rec::Method::both;
  throw std::invalid_argument("method must be bruteforce, recursion, or both");
}

std::string subset_str(std::uint32_t mask) {
  std::string s = "{";
  for (int r = 1; mask >> (r - 1); ++r)
    if (mask & (1u << (r - 1))) {
      if (s.size() > 1) s += ",";
      s += std::to_string(r);
    }
  return s + "}";
}

int scan_length(const cox::SystemPtr& sys, int max_length) {
  if (sys->backend() == cox::Backend::symmetric)
    return sys->degree() * (sys->degree() - 1) / 2;
  return max_length;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flag-enumerative invariants of Bruhat intervals"};
  app.require_subcommand(1);
  std::function<int()> run;

  // --- cdindex ---------------------------------------------------------
  Common cd_c;
  std::string cd_u, cd_w, cd_method = "both";
  auto* cd_cmd = app.add_subcommand("cdindex", "cd-index of the Bruhat interval [u, w]");
  add_common(cd_cmd, cd_c);
  cd_cmd->add_option("--u", cd_u, "bottom element")->required();
  cd_cmd->add_option("--w", cd_w, "top element")->required();
  cd_cmd->add_option("--method", cd_method, "bruteforce, recursion, or both")
      ->capture_default_str();
  cd_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(cd_c);
      auto poly = rec::cd_index_interval(sys->parse(cd_u), sys->parse(cd_w),
                                         parse_method(cd_method));
      emit(flg::cd_json(poly), cd_c);
      return kExitOk;
    };
  });

  // --- abindex ---------------------------------------------------------
  Common ab_c;
  std::string ab_u, ab_w;
  auto* ab_cmd = app.add_subcommand("abindex", "ab-index of the Bruhat interval [u, w]");
  add_common(ab_cmd, ab_c);
  ab_cmd->add_option("--u", ab_u, "bottom element")->required();
  ab_cmd->add_option("--w", ab_w, "top element")->required();
  ab_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(ab_c);
      cox::Element u = sys->parse(ab_u), w = sys->parse(ab_w);
      cox::Interval iv = cox::bruhat_interval(u, w, ab_c.budget);
      auto poly = iv.poset.size() == 1 ? flg::AbPolynomial::one()
                                       : flg::ab_index(iv.poset);
      emit(flg::ab_json(poly), ab_c);
      return kExitOk;
    };
  });

  // --- flags -----------------------------------------------------------
  Common fl_c;
  std::string fl_u, fl_w;
  auto* fl_cmd = app.add_subcommand("flags", "flag f- and h-vectors of [u, w]");
  add_common(fl_cmd, fl_c);
  fl_cmd->add_option("--u", fl_u, "bottom element")->required();
  fl_cmd->add_option("--w", fl_w, "top element")->required();
  fl_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(fl_c);
      cox::Element u = sys->parse(fl_u), w = sys->parse(fl_w);
      cox::Interval iv = cox::bruhat_interval(u, w, fl_c.budget);
      flg::FlagVector f = flg::flag_f(iv.poset);
      flg::FlagVector h = flg::flag_h(f);
      Json jf = Json::object(), jh = Json::object();
      for (std::uint32_t mask = 0; mask < f.value.size(); ++mask) {
        jf[subset_str(mask)] = f.value[mask];
        jh[subset_str(mask)] = h.value[mask];
      }
      emit(Json{{"group", sys->describe()},
                {"u", u.str()},
                {"w", w.str()},
                {"proper_ranks", f.n},
                {"f", jf},
                {"h", jh}},
           fl_c);
      return kExitOk;
    };
  });

  // --- interval --------------------------------------------------------
  Common iv_c;
  std::string iv_u, iv_w;
  auto* iv_cmd = app.add_subcommand("interval", "the interval [u, w] as a graded poset");
  add_common(iv_cmd, iv_c);
  iv_cmd->add_option("--u", iv_u, "bottom element")->required();
  iv_cmd->add_option("--w", iv_w, "top element")->required();
  iv_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(iv_c);
      cox::Interval iv = cox::bruhat_interval(sys->parse(iv_u), sys->parse(iv_w), iv_c.budget);
      emit(iv.poset.to_json(), iv_c);
      return kExitOk;
    };
  });

  // --- zip-sequence ----------------------------------------------------
  Common zs_c;
  std::string zs_u, zs_w, zs_variant = "interval";
  int zs_s = 0;
  auto* zs_cmd = app.add_subcommand(
      "zip-sequence", "zipping run from the structured poset down to the target interval");
  add_common(zs_cmd, zs_c);
  zs_cmd->add_option("--u", zs_u, "bottom element")->required();
  zs_cmd->add_option("--w", zs_w, "top element")->required();
  zs_cmd->add_option("--s", zs_s, "generator (1-based) lengthening both u and w")->required();
  zs_cmd->add_option("--variant", zs_variant, "interval or shaved")->capture_default_str();
  zs_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(zs_c);
      rec::Variant variant;
      if (zs_variant == "interval") variant = rec::Variant::interval;
      else if (zs_variant == "shaved") variant = rec::Variant::shaved;
      else throw std::invalid_argument("variant must be interval or shaved");
      if (zs_s < 1 || zs_s > sys->rank())
        throw std::invalid_argument("generator index out of range");
      rec::ZippingSequence seq =
          rec::zipping_sequence(sys->parse(zs_u), sys->parse(zs_w), zs_s - 1, variant);
      Json steps = Json::array();
      for (const auto& st : seq.steps)
        steps.push_back(Json{{"v", st.v.str()},
                             {"zipper", Json::array({st.x, st.y, st.z})},
                             {"size_after", st.result.size()},
                             {"cd_after", flg::cd_json(flg::cd_index(st.result))}});
      emit(Json{{"group", sys->describe()},
                {"u", seq.u.str()},
                {"w", seq.w.str()},
                {"s", zs_s},
                {"variant", zs_variant},
                {"base_size", seq.base.size()},
                {"base_cd", flg::cd_json(flg::cd_index(seq.base))},
                {"steps", steps},
                {"target_size", seq.target.poset.size()},
                {"isomorphic", true}},
           zs_c);
      return kExitOk;
    };
  });

  // --- construct -------------------------------------------------------
  auto* con_cmd = app.add_subcommand("construct", "reference families");
  con_cmd->require_subcommand(1);

  Common cb_c;
  int cb_n = 3;
  std::string cb_emit = "summary";
  auto* cb_cmd = con_cmd->add_subcommand("boolean", "Boolean lattice B_n");
  cb_cmd->add_option("--n", cb_n, "rank")->required();
  cb_cmd->add_option("--emit", cb_emit, "summary or poset")->capture_default_str();
  cb_cmd->add_option("--out", cb_c.out, "write the JSON here instead of stdout");
  cb_cmd->callback([&]() {
    run = [&]() {
      con::BooleanInterval b = con::boolean_interval(cb_n);
      if (cb_emit == "poset") {
        emit(b.direct.to_json(), cb_c);
        return kExitOk;
      }
      if (cb_emit != "summary") throw std::invalid_argument("--emit takes summary or poset");
      emit(Json{{"n", cb_n},
                {"size", b.direct.size()},
                {"cd", flg::cd_json(con::boolean_cd(cb_n))},
                {"matched", true}},
           cb_c);
      return kExitOk;
    };
  });

  Common ds_c;
  int ds_d = 2, ds_k = 1;
  std::string ds_emit = "summary";
  auto* ds_cmd = con_cmd->add_subcommand("dual-stacked", "dual stacked polytope face lattice");
  ds_cmd->add_option("--d", ds_d, "dimension (>= 2)")->required();
  ds_cmd->add_option("--k", ds_k, "number of stackings")->required();
  ds_cmd->add_option("--emit", ds_emit, "summary or poset")->capture_default_str();
  ds_cmd->add_option("--out", ds_c.out, "write the JSON here instead of stdout");
  ds_cmd->callback([&]() {
    run = [&]() {
      con::DualStacked ds = con::dual_stacked_interval(ds_d, ds_k);
      if (ds_emit == "poset") {
        emit(ds.interval.poset.to_json(), ds_c);
        return kExitOk;
      }
      if (ds_emit != "summary") throw std::invalid_argument("--emit takes summary or poset");
      bool agree = ds.cd == ds.cd_bruteforce;
      bool eul = pos::is_eulerian(ds.interval.poset);
      bool thin = pos::is_thin(ds.interval.poset);
      emit(Json{{"d", ds.d},
                {"k", ds.k},
                {"size", ds.interval.poset.size()},
                {"coatoms",
                 static_cast<int>(
                     ds.interval.poset.lower_covers(ds.interval.poset.top()).size())},
                {"cd", flg::cd_json(ds.cd)},
                {"cd_bruteforce", flg::cd_json(ds.cd_bruteforce)},
                {"agree", agree},
                {"eulerian", eul},
                {"thin", thin}},
           ds_c);
      return agree && eul && thin ? kExitOk : kExitViolation;
    };
  });

  Common sp_c;
  int sp_n = 4;
  auto* sp_cmd = con_cmd->add_subcommand("spanning", "Fibonacci family spanning all cd-words");
  sp_cmd->add_option("--n", sp_n, "length of the words")->required();
  sp_cmd->add_option("--out", sp_c.out, "write the JSON here instead of stdout");
  sp_cmd->callback([&]() {
    run = [&]() {
      con::SpanningFamily fam = con::spanning_family(sp_n);
      long long fib = flg::fibonacci(sp_n);
      Json words = Json::array(), cds = Json::array();
      for (const auto& w : fam.words) words.push_back(w.str());
      for (const auto& p : fam.cds) cds.push_back(flg::cd_json(p));
      bool ok = fam.rank == fib;
      emit(Json{{"n", sp_n},
                {"count", static_cast<long long>(fam.words.size())},
                {"fibonacci", fib},
                {"rank", fam.rank},
                {"ok", ok},
                {"words", words},
                {"cd", cds}},
           sp_c);
      return ok ? kExitOk : kExitViolation;
    };
  });

  // --- verify ----------------------------------------------------------
  auto* ver_cmd = app.add_subcommand("verify", "exhaustive checks over a scope");
  ver_cmd->require_subcommand(1);

  Common ve_c;
  auto* ve_cmd = ver_cmd->add_subcommand("eulerian", "every interval is Eulerian and thin");
  add_common(ve_cmd, ve_c, true);
  ve_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(ve_c);
      require_long_for_big_scopes(sys, ve_c);
      int len = scan_length(sys, ve_c.max_length);
      auto elements = cox::enumerate_elements(sys, len, ve_c.budget);
      Json violations = Json::array();
      long long pairs = 0;
      for (const auto& u : elements)
        for (const auto& w : elements) {
          if (!cox::bruhat_leq(u, w)) continue;
          ++pairs;
          cox::Interval iv = cox::bruhat_interval(u, w, ve_c.budget);
          bool eul = pos::is_eulerian(iv.poset);
          bool thin = pos::is_thin(iv.poset);
          if ((!eul || !thin) && violations.size() < 20)
            violations.push_back(Json{{"u", u.str()},
                                      {"w", w.str()},
                                      {"eulerian", eul},
                                      {"thin", thin}});
        }
      bool ok = violations.empty();
      emit(Json{{"name", "eulerian and thin"},
                {"group", sys->describe()},
                {"pairs", pairs},
                {"violations", violations},
                {"ok", ok}},
           ve_c);
      return ok ? kExitOk : kExitViolation;
    };
  });

  Common vr_c;
  bool vr_fault = false;
  auto* vr_cmd =
      ver_cmd->add_subcommand("recursion", "recursion and half-forms against enumeration");
  add_common(vr_cmd, vr_c, true);
  vr_cmd->add_flag("--inject-fault", vr_fault,
                   "perturb one recursion result to exercise the failure path");
  vr_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(vr_c);
      require_long_for_big_scopes(sys, vr_c);
      rec::RecursionReport report = rec::verify_recursion(sys, vr_c.max_length, vr_fault);
      emit(report.to_json(), vr_c);
      return report.ok() ? kExitOk : kExitViolation;
    };
  });

  Common vn_c;
  std::string vn_method = "recursion";
  auto* vn_cmd = ver_cmd->add_subcommand("nonneg", "cd-coefficients are nonnegative");
  add_common(vn_cmd, vn_c, true);
  vn_cmd->add_option("--method", vn_method, "bruteforce, recursion, or both")
      ->capture_default_str();
  vn_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(vn_c);
      require_long_for_big_scopes(sys, vn_c);
      con::CheckReport report =
          con::check_nonnegativity(sys, vn_c.max_length, parse_method(vn_method));
      emit(report.to_json(), vn_c);
      return kExitOk;  // conjecture class: violations are findings, not errors
    };
  });

  Common vb_c;
  bool vb_cd = false;
  auto* vb_cmd = ver_cmd->add_subcommand(
      "boolean-bound", "ab-indices of lower intervals are bounded by the Boolean lattice");
  add_common(vb_cmd, vb_c, true);
  vb_cmd->add_flag("--cd", vb_cd,
                   "survey the cd-level comparison over all intervals instead "
                   "(known to fail; report only)");
  vb_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(vb_c);
      require_long_for_big_scopes(sys, vb_c);
      if (vb_cd) {
        con::CheckReport report = con::check_boolean_bound_cd(sys, vb_c.max_length);
        emit(report.to_json(), vb_c);
        return kExitOk;
      }
      con::CheckReport report = con::check_boolean_bound(sys, vb_c.max_length);
      emit(report.to_json(), vb_c);
      return report.ok() ? kExitOk : kExitViolation;
    };
  });

  Common vd_c;
  int vd_d = 2, vd_k = 1;
  auto* vd_cmd = ver_cmd->add_subcommand(
      "dual-stacked-bound", "cd-indices at matching lengths against the dual stacked bound");
  add_common(vd_cmd, vd_c, true);
  vd_cmd->add_option("--d", vd_d, "dimension (>= 2)")->required();
  vd_cmd->add_option("--k", vd_k, "number of stackings")->required();
  vd_cmd->callback([&]() {
    run = [&]() {
      auto sys = make_system(vd_c);
      require_long_for_big_scopes(sys, vd_c);
      con::CheckReport report =
          con::check_dual_stacked_bound(sys, vd_d, vd_k, vd_c.max_length);
      emit(report.to_json(), vd_c);
      return kExitOk;  // conjecture class
    };
  });

  Common vs_c;
  int vs_n = 4, vs_type_a = 0;
  auto* vs_cmd = ver_cmd->add_subcommand(
      "span", "the Fibonacci family's cd-indices span the full degree");
  vs_cmd->add_option("--n", vs_n, "length of the words")->required();
  vs_cmd->add_option("--type-a", vs_type_a,
                     "also report the span of all lower intervals of sym:N");
  vs_cmd->add_option("--out", vs_c.out, "write the JSON here instead of stdout");
  vs_cmd->callback([&]() {
    run = [&]() {
      con::SpanningFamily fam = con::spanning_family(vs_n);
      long long fib = flg::fibonacci(vs_n);
      bool ok = fam.rank == fib &&
                static_cast<long long>(fam.words.size()) == fib;
      Json j{{"n", vs_n},
             {"count", static_cast<long long>(fam.words.size())},
             {"fibonacci", fib},
             {"rank", fam.rank},
             {"ok", ok}};
      if (vs_type_a > 0)
        j["type_a"] = Json{{"n", vs_type_a},
                           {"rank", con::type_a_lower_interval_rank(vs_type_a)}};
      emit(j, vs_c);
      return ok ? kExitOk : kExitViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return run();
  } catch (const NotInCdSpanError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const OverflowError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
