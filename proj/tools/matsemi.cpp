// matsemi: command-line front-end for the matsemi library.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <matsemi/closure.hpp>
#include <matsemi/conjugacy.hpp>
#include <matsemi/flags.hpp>
#include <matsemi/isolated.hpp>
#include <matsemi/nilclass.hpp>
#include <matsemi/verify.hpp>

namespace {

  using namespace matsemi;

  constexpr char const* version = "0.1.0";

  enum Exit { ok = 0, check_failed = 1, bad_input = 2, over_cap = 3 };

  struct Options {
    std::string   field  = "2";
    int           n      = 0;  // 0: derive from the input
    std::string   format = "json";
    unsigned      threads   = 1;
    std::uint64_t max_elems = 0;
    std::string   out;
    bool          timing = false;

    std::string method = "theorem1";
    std::string check;
    std::string matrix;
    std::string other;
    std::string flag;
    std::string flag2;
    std::string set;
    std::string sig;
    std::string sig2;
    int         n2       = 0;
    bool        infinite = false;
    std::string mode     = "exhaustive";
    int         k        = 1;
    std::string profile  = "quick";
    bool        inject_fault = false;
  };

  struct Outcome {
    Json params = Json::object();
    Json result = Json::object();
    int  code   = ok;
  };

  Json strings(MatSet const& s) {
    Json a = Json::array();
    for (auto const& m : s) {
      a.push_back(text::format(m));
    }
    return a;
  }

  Json strings(std::vector<Subspace> const& v) {
    Json a = Json::array();
    for (auto const& u : v) {
      a.push_back(text::format(u));
    }
    return a;
  }

  class Runner {
   public:
    explicit Runner(Options const& o)
        : _o(o), _caps(o.max_elems ? Caps::raised_to(o.max_elems) : Caps{}) {}

    Caps const& caps() const {
      return _caps;
    }

    Field field() const {
      return text::parse_field(_o.field, _caps);
    }

    int need_n() const {
      if (_o.n < 1) {
        fail(ErrorKind::ParseError, "--n is required");
      }
      if (_o.n > _caps.max_n) {
        fail(ErrorKind::CapExceeded, "n exceeds " + std::to_string(_caps.max_n));
      }
      return _o.n;
    }

    Matrix square(std::string const& s, char const* what) const {
      if (s.empty()) {
        fail(ErrorKind::ParseError, std::string(what) + " is required");
      }
      Matrix m = text::parse_matrix(field(), s);
      if (!m.is_square()) {
        fail(ErrorKind::DimMismatch, std::string(what) + " must be square");
      }
      if (_o.n > 0 && m.rows() != _o.n) {
        fail(ErrorKind::DimMismatch, std::string(what) + " is not " + std::to_string(_o.n)
                                         + "x" + std::to_string(_o.n));
      }
      return m;
    }

    MatSet matrix_set() const {
      auto list = text::parse_matrix_list(field(), _o.set);
      if (list.empty()) {
        fail(ErrorKind::ParseError, "--set is empty");
      }
      int const n = list.front().rows();
      for (auto const& m : list) {
        if (!m.is_square() || m.rows() != n || (_o.n > 0 && n != _o.n)) {
          fail(ErrorKind::DimMismatch, "--set needs square matrices of one size");
        }
      }
      return MatSet(field(), n, std::move(list));
    }

    Flag flag(std::string const& s, char const* what) const {
      if (s.empty()) {
        fail(ErrorKind::ParseError, std::string(what) + " is required");
      }
      return text::parse_flag(field(), need_n(), s);
    }

    Signature signature(std::string const& s) const {
      if (s.empty()) {
        fail(ErrorKind::ParseError, "--sig is required");
      }
      std::string_view body = text::trim(s);
      if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
        body = body.substr(1, body.size() - 2);
      }
      return text::parse_int_list(body);
    }

    // Flag from --flag, or the standard flag of --sig.
    Flag context_flag() const {
      if (!_o.flag.empty()) {
        return flag(_o.flag, "--flag");
      }
      Signature const s = signature(_o.sig);
      int total = 0;
      for (int d : s) {
        total += d;
      }
      if (_o.n > 0 && total != _o.n) {
        fail(ErrorKind::BadSignature, "signature does not sum to --n");
      }
      return standard_flag(field(), s);
    }

    Outcome classes() const {
      Outcome out;
      int const n = need_n();
      out.params  = {{"field", _o.field}, {"n", n}, {"method", _o.method}};
      if (!_o.check.empty()) {
        out.params["check"] = _o.check;
      }
      auto const method = _o.method == "brute" ? ClassMethod::brute : ClassMethod::theorem1;
      Field const f     = field();
      auto const  got   = sg_classes(f, n, method, _o.threads, _caps);
      auto const  cls   = got.partition.classes();
      std::vector<std::size_t> sizes;
      Json list = Json::array();
      for (auto const& c : cls) {
        sizes.push_back(c.size());
        Json members = Json::array();
        for (Id x : c) {
          members.push_back(text::format(got.elements[x]));
        }
        list.push_back({{"representative", text::format(got.elements[c.front()])},
                        {"size", c.size()},
                        {"members", members}});
      }
      std::sort(sizes.begin(), sizes.end());
      out.result = {{"elements", got.elements.size()},
                    {"classes", cls.size()},
                    {"class_sizes", sizes},
                    {"partition", list}};
      if (!_o.check.empty()) {
        auto const other_method = _o.check == "brute" ? ClassMethod::brute : ClassMethod::theorem1;
        auto const ref   = sg_classes(f, n, other_method, _o.threads, _caps);
        bool const agree = ref.partition == got.partition;
        out.result["check"] = {{"method", _o.check}, {"agree", agree}};
        if (!agree) {
          out.code = check_failed;
        }
      }
      return out;
    }

    Outcome core_cmd() const {
      Outcome      out;
      Matrix const a = square(_o.matrix, "--matrix");
      out.params     = {{"field", _o.field}, {"matrix", text::format(a)}};
      auto const d   = core(a);
      out.result     = {{"stability_index", d.t},
                        {"image", text::format(d.image_t)},
                        {"kernel", text::format(d.kernel_t)},
                        {"core", text::format(d.core)}};
      if (!_o.other.empty()) {
        Matrix const b = square(_o.other, "--other");
        if (b.rows() != a.rows()) {
          fail(ErrorKind::DimMismatch, "--other has another size");
        }
        out.params["other"] = text::format(b);
        out.result["other_core"]   = text::format(core(b).core);
        out.result["gl_conjugate"] = gl_conjugate(a, b);
        out.result["sg_conjugate"] = sg_conjugate(a, b);
      }
      return out;
    }

    Outcome chain_cmd() const {
      Outcome      out;
      Matrix const a = square(_o.matrix, "--matrix");
      out.params     = {{"field", _o.field}, {"matrix", text::format(a)}};
      auto const c   = conjugacy_chain(a);
      Json steps     = Json::array();
      for (auto const& s : c.steps) {
        steps.push_back(text::format(s));
      }
      Json wit = Json::array();
      for (auto const& [u, v] : c.witnesses) {
        wit.push_back({{"u", text::format(u)}, {"v", text::format(v)}});
      }
      bool const valid = c.valid() && similar(c.steps.back(), core(a).core);
      out.result       = {{"steps", steps}, {"witnesses", wit}, {"valid", valid}};
      if (!valid) {
        out.code = check_failed;
      }
      return out;
    }

    Outcome flags_cmd(std::string const& sub) const {
      Outcome out;
      out.params = {{"field", _o.field}};
      if (_o.n > 0) {
        out.params["n"] = _o.n;
      }
      if (sub == "phi") {
        Flag const f        = flag(_o.flag, "--flag");
        out.params["flag"]  = text::format(f);
        MatSet const s      = phi_enumerate(f, _caps);
        out.result = {{"flag", text::format(f)},
                      {"signature", text::format(f.signature())},
                      {"size", s.size()},
                      {"size_exponent", phi_size_exponent(f.signature())},
                      {"nilpotency_degree", nilpotency_degree(s)},
                      {"elements", strings(s)}};
      } else if (sub == "psi" || sub == "maximal") {
        MatSet const s     = matrix_set();
        out.params["set"]  = strings(s);
        Flag const f       = psi(s);
        out.result         = {{"nilpotency_degree", nilpotency_degree(s)},
                              {"psi", text::format(f)},
                              {"signature", text::format(f.signature())}};
        if (sub == "maximal") {
          out.result["k_maximal"] = is_k_maximal(s, _caps);
        }
      } else {
        Flag const f        = flag(_o.flag, "--flag");
        Flag const g        = flag(_o.flag2, "--flag2");
        out.params["flag"]  = text::format(f);
        out.params["flag2"] = text::format(g);
        bool const cons     = consolidation(f, g);
        bool const contained = phi_enumerate(g, _caps).is_subset_of(phi_enumerate(f, _caps));
        out.result = {{"consolidation", cons}, {"phi_contained", contained},
                      {"agree", cons == contained}};
        if (cons != contained) {
          out.code = check_failed;
        }
      }
      return out;
    }

    Outcome nil_cmd(std::string const& sub) const {
      Outcome out;
      if (sub == "iso-decide") {
        Signature const s1 = signature(_o.sig);
        Signature const s2 = signature(_o.sig2.empty() ? _o.sig : _o.sig2);
        auto total = [](Signature const& s) {
          int t = 0;
          for (int d : s) {
            t += d;
          }
          return t;
        };
        int const n1 = _o.n > 0 ? _o.n : total(s1);
        int const n2 = _o.n2 > 0 ? _o.n2 : total(s2);
        FieldClass fc{_o.infinite, 0};
        out.params = Json::object();
        if (_o.infinite) {
          out.params["field"] = "infinite";
        } else {
          Field const f       = field();
          fc.q                = f.q();
          out.params["field"] = _o.field;
        }
        out.params["n"]    = n1;
        out.params["sig"]  = text::format(s1);
        out.params["n2"]   = n2;
        out.params["sig2"] = text::format(s2);
        out.result = {{"answer", to_string(iso_decide(fc, n1, s1, n2, s2))}};
        return out;
      }
      out.params = {{"field", _o.field}};
      Flag const f1         = context_flag();
      out.params["n"]       = f1.ambient();
      out.params["flag"]    = text::format(f1);
      NilContext const c1(f1, _caps);
      if (sub == "fingerprint") {
        out.result = {{"signature", text::format(c1.signature())},
                      {"fingerprint", fingerprint(c1).to_json()}};
        return out;
      }
      Flag const f2 = flag(_o.flag2, "--flag2");
      out.params["flag2"] = text::format(f2);
      NilContext const c2(f2, _caps);
      auto const map = iso_construct(c1, c2);
      Json pairs     = Json::array();
      for (Id a = 0; a < map.size(); ++a) {
        pairs.push_back({text::format(c1[a]), text::format(c2[map[a]])});
      }
      Matrix const g = flag_transporter(f1, f2);
      out.result     = {{"transporter", text::format(g)},
                        {"size", map.size()},
                        {"verified", true},
                        {"map", pairs}};
      return out;
    }

    Json entry_json(IsolatedEntry const& e) const {
      Json j = {{"kind", e.kind}, {"size", e.elements.size()}};
      if (e.kind == "SAB") {
        j["a_family"] = strings(e.a_family);
        j["b_family"] = strings(e.b_family);
      }
      if (e.kind == "other") {
        j["elements"] = strings(e.elements);
      }
      j["isolated"]            = e.isolated;
      j["completely_isolated"] = e.completely_isolated;
      return j;
    }

    Outcome isolated_cmd(std::string const& sub) const {
      Outcome out;
      if (sub == "enum") {
        int const   n = need_n();
        Field const f = field();
        out.params    = {{"field", _o.field}, {"n", n}, {"mode", _o.mode}};
        auto const mode
            = _o.mode == "theorem-list" ? IsolatedMode::theorem_list : IsolatedMode::exhaustive;
        auto const rep = enumerate_isolated(f, n, mode, _o.threads, _caps);
        Json       list = Json::array();
        std::size_t complete = 0;
        for (auto const& e : rep.entries) {
          list.push_back(entry_json(e));
          complete += e.completely_isolated;
        }
        out.result = {{"isolated", rep.entries.size()},
                      {"completely_isolated", complete}};
        if (rep.complete) {
          out.result["subsemigroups"] = rep.subsemigroups;
          auto const l27 = lemma27_check(rep, f, n, _caps);
          out.result["lemma27"] = {{"checked", l27.checked},
                                   {"triggered", l27.triggered},
                                   {"violations", l27.violations}};
          if (!l27.violations.empty()) {
            out.code = check_failed;
          }
        }
        out.result["lists_agree"] = rep.lists_agree;
        out.result["entries"]     = list;
        if (!rep.lists_agree) {
          out.code = check_failed;
        }
        return out;
      }
      MatSet const s    = matrix_set();
      out.params        = {{"field", _o.field}, {"n", s.dim()}, {"set", strings(s)}};
      out.result        = {{"size", s.size()},
                           {"closed", is_closed(s)},
                           {"isolated", is_isolated(s, _caps)},
                           {"completely_isolated", is_completely_isolated(s, _caps)}};
      return out;
    }

    Outcome ideal_cmd() const {
      Outcome     out;
      int const   n = need_n();
      Field const f = field();
      out.params    = {{"field", _o.field}, {"n", n}, {"k", _o.k}};
      MatSet const gen = ideal_generated_by_stratum(f, n, _o.k, _caps);
      MatSet const id  = ideal(f, n, _o.k, _caps);
      bool const   eq  = gen == id;
      out.result = {{"stratum_size", rank_stratum(f, n, _o.k, _caps).size()},
                    {"closure_size", gen.size()},
                    {"ideal_size", id.size()},
                    {"equal", eq}};
      if (!eq) {
        out.code = check_failed;
      }
      return out;
    }

    Outcome verify_cmd() const {
      Outcome       out;
      VerifyOptions opt;
      opt.profile      = _o.profile == "full" ? Profile::full : Profile::quick;
      opt.threads      = _o.threads;
      opt.caps         = _caps;
      opt.inject_fault = _o.inject_fault;
      out.params       = {{"profile", _o.profile}};
      if (_o.n > 0) {
        opt.field       = field();
        opt.n           = need_n();
        out.params["field"] = _o.field;
        out.params["n"]     = _o.n;
      }
      if (_o.inject_fault) {
        out.params["inject_fault"] = true;
      }
      auto const rep = verify_all(opt);
      Json crit      = Json::array();
      for (auto const& r : rep.criteria) {
        crit.push_back(to_json(r));
      }
      out.result = {{"passed", rep.passed()}, {"criteria", crit}};
      if (!rep.local.empty()) {
        Json local = Json::array();
        for (auto const& r : rep.local) {
          local.push_back(to_json(r));
        }
        out.result["local"] = local;
      }
      if (!rep.passed()) {
        out.code = check_failed;
      }
      return out;
    }

   private:
    Options const& _o;
    Caps           _caps;
  };

  // CSV and text flatten the report to dotted keys.
  void flatten(Json const& j, std::string const& key,
               std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object() || j.is_array()) {
      if (j.empty()) {
        rows.emplace_back(key, j.is_object() ? "{}" : "[]");
        return;
      }
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        std::string const part = j.is_object() ? it.key() : std::to_string(i);
        flatten(*it, key.empty() ? part : key + "." + part, rows);
      }
      return;
    }
    rows.emplace_back(key, j.is_string() ? j.get<std::string>() : j.dump());
  }

  std::string csv_field(std::string const& s) {
    if (s.find_first_of(",\"") == std::string::npos) {
      return s;
    }
    std::string out = "\"";
    for (char c : s) {
      out += c;
      if (c == '"') {
        out += '"';
      }
    }
    return out + "\"";
  }

  std::string render(Json const& report, std::string const& format) {
    if (format == "json") {
      return report.dump(2) + "\n";
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::string out = format == "csv" ? "key,value\n" : "";
    for (auto const& [k, v] : rows) {
      out += format == "csv" ? csv_field(k) + "," + csv_field(v) + "\n" : k + ": " + v + "\n";
    }
    return out;
  }

  int exit_code(ErrorKind k) {
    switch (k) {
      case ErrorKind::CapExceeded:
        return over_cap;
      case ErrorKind::InternalError:
        return check_failed;
      default:
        return bad_input;
    }
  }

}  // namespace

int main(int argc, char** argv) {
  Options  o;
  CLI::App app{"Exact computations in the matrix semigroups M(n, q)", "matsemi"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--field", o.field, "field order p or p^k")->capture_default_str();
  app.add_option("--n", o.n, "matrix size")->check(CLI::Range(1, 64));
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--max-elems", o.max_elems, "raise the element caps to this count");
  app.add_option("--out", o.out, "write the report to a file");
  app.add_flag("--timing", o.timing, "add wall time to the report");

  auto* classes = app.add_subcommand("classes", "semigroup-conjugacy classes of M(n, q)");
  classes->add_option("--method", o.method)->check(CLI::IsMember({"theorem1", "brute"}));
  classes->add_option("--check", o.check, "cross-check with another method")
      ->check(CLI::IsMember({"theorem1", "brute"}));

  auto* core = app.add_subcommand("core", "core decomposition of a matrix");
  core->add_option("--matrix", o.matrix)->required();
  core->add_option("--other", o.other, "compare conjugacy with this matrix");

  auto* chain = app.add_subcommand("chain", "primary conjugacy chain from A to its core");
  chain->add_option("--matrix", o.matrix)->required();

  auto* flags = app.add_subcommand("flags", "flags and maximal nilpotent subsemigroups");
  flags->require_subcommand(1);
  flags->fallthrough();
  for (char const* name : {"phi", "psi", "maximal", "consolidation"}) {
    auto* sub = flags->add_subcommand(name);
    sub->fallthrough();
  }
  flags->get_subcommand("phi")->add_option("--flag", o.flag)->required();
  flags->get_subcommand("psi")->add_option("--set", o.set)->required();
  flags->get_subcommand("maximal")->add_option("--set", o.set)->required();
  flags->get_subcommand("consolidation")->add_option("--flag", o.flag)->required();
  flags->get_subcommand("consolidation")->add_option("--flag2", o.flag2)->required();

  auto* nil = app.add_subcommand("nil", "isomorphism invariants of phi(F)");
  nil->require_subcommand(1);
  nil->fallthrough();
  auto* fp = nil->add_subcommand("fingerprint");
  fp->fallthrough();
  auto* fp_flag = fp->add_option("--flag", o.flag);
  fp->add_option("--sig", o.sig, "standard flag of this signature")->excludes(fp_flag);
  auto* decide = nil->add_subcommand("iso-decide");
  decide->fallthrough();
  decide->add_option("--sig", o.sig)->required();
  decide->add_option("--sig2", o.sig2)->required();
  decide->add_option("--n2", o.n2);
  decide->add_flag("--infinite", o.infinite, "decide over an infinite field");
  auto* construct = nil->add_subcommand("iso-construct");
  construct->fallthrough();
  construct->add_option("--flag", o.flag)->required();
  construct->add_option("--flag2", o.flag2)->required();

  auto* iso = app.add_subcommand("isolated", "isolated subsemigroups");
  iso->require_subcommand(1);
  iso->fallthrough();
  auto* iso_enum = iso->add_subcommand("enum");
  iso_enum->fallthrough();
  iso_enum->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "theorem-list"}));
  auto* iso_check = iso->add_subcommand("check");
  iso_check->fallthrough();
  iso_check->add_option("--set", o.set)->required();

  auto* ideal = app.add_subcommand("ideal", "rank ideals");
  ideal->require_subcommand(1);
  ideal->fallthrough();
  auto* gen = ideal->add_subcommand("gen");
  gen->fallthrough();
  gen->add_option("--k", o.k)->required();

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* all = verify->add_subcommand("all");
  all->fallthrough();
  all->add_option("--profile", o.profile)->check(CLI::IsMember({"quick", "full"}));
  all->add_flag("--inject-fault", o.inject_fault, "flip one table product");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? ok : bad_input;
  }

  auto const  start = std::chrono::steady_clock::now();
  Runner const run(o);
  std::string  command;
  Outcome      res;
  try {
    auto* top = app.get_subcommands().front();
    command   = top->get_name();
    std::string sub;
    if (!top->get_subcommands().empty()) {
      sub = top->get_subcommands().front()->get_name();
      command += " " + sub;
    }
    if (top == classes) {
      res = run.classes();
    } else if (top == core) {
      res = run.core_cmd();
    } else if (top == chain) {
      res = run.chain_cmd();
    } else if (top == flags) {
      res = run.flags_cmd(sub);
    } else if (top == nil) {
      res = run.nil_cmd(sub);
    } else if (top == iso) {
      res = run.isolated_cmd(sub);
    } else if (top == ideal) {
      res = run.ideal_cmd();
    } else {
      res = run.verify_cmd();
    }
  } catch (Error const& e) {
    std::cerr << "matsemi: " << e.what() << "\n";
    return exit_code(e.kind());
  }

  Json report;
  report["tool"]    = "matsemi";
  report["version"] = version;
  report["command"] = command;
  report["params"]  = res.params;
  Caps const& c     = run.caps();
  report["caps"]    = {{"max_q", c.max_q},
                       {"max_n", c.max_n},
                       {"max_enumeration", c.max_enumeration},
                       {"max_universe", c.max_universe},
                       {"max_brute", c.max_brute},
                       {"max_iso", c.max_iso},
                       {"max_subset_elems", c.max_subset_elems}};
  report["result"]  = res.result;
  if (o.timing) {
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  }

  std::string const text = render(report, o.format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!(file << text)) {
      std::cerr << "matsemi: cannot write " << o.out << "\n";
      return bad_input;
    }
  }
  return res.code;
}
