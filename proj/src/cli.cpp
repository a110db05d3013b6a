#include "orderly/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "orderly/error.hpp"
#include "orderly/json.hpp"
#include "orderly/search.hpp"
#include "orderly/sharp.hpp"
#include "orderly/view.hpp"

namespace orderly::cli {

namespace {

enum Group : unsigned {
  kView = 1u << 0,
  kBounds = 1u << 1,
  kSearch = 1u << 2,
  kColoring = 1u << 3,
  kWitness = 1u << 4,
  kTuple = 1u << 5,
  kFill = 1u << 6,
};

struct Flags {
  std::string term;
  std::string signature;
  std::string algebra;
  std::string assignment;
  std::string view;
  std::string witness;
  std::string u_witness;
  std::string coloring;
  std::string fill;
  std::string manifest;
  std::int64_t mod = 0;
  std::vector<std::int64_t> accept;
  std::size_t max_size = 0;
  VarIndex max_index = 0;
  std::size_t k = 0;
  std::size_t fr_size = 0;
  std::size_t threads = 1;
  std::int64_t time_budget_ms = 0;
  std::size_t n = 2;
};

// What one run produced: the stdout report, its exit status and a summary.
struct RunResult {
  Json report;
  int status = kOk;
  std::string summary;
};

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

class Context {
 public:
  Context(Flags& flags, CLI::App* leaf) : flags_(flags), leaf_(leaf) {}

  bool given(const std::string& name) const {
    const auto* opt = leaf_->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  }

  // A flag value is a file path when such a file exists, inline text otherwise.
  std::string load(const std::string& flag, const std::string& value) {
    std::string text = value;
    if (std::filesystem::is_regular_file(value)) {
      std::ifstream in(value, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    digests_[flag] = "fnv1a64:" + hex64(fnv1a64(text));
    return text;
  }

  Json load_json(const std::string& flag, const std::string& value) {
    return parse_json(load(flag, value));
  }

  Signature signature() {
    if (!given("--signature")) return Signature::binary();
    return signature_from_json(load_json("signature", flags_.signature));
  }

  Algebra algebra() {
    const std::string text = load("algebra", flags_.algebra);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '"')) {
      return algebra_from_json(parse_json(text));
    }
    return algebra_from_json(Json(trim(text)));
  }

  // JSON array, or the shorthand "a..b" for the integers a, a+1, ..., b.
  Assignment assignment(const std::string& flag, const std::string& value) {
    const std::string text = trim(load(flag, value));
    static const std::regex range(R"((-?\d+)\.\.(-?\d+))");
    std::smatch m;
    if (std::regex_match(text, m, range)) {
      Integer lo(m[1].str());
      Integer hi(m[2].str());
      if (hi < lo || hi - lo >= 1'000'000) {
        throw Error(ErrorKind::InvalidInput, "bad assignment range '" + text + "'");
      }
      Assignment a;
      for (Integer i = lo; i <= hi; ++i) a.push_back(Value(i));
      return a;
    }
    return assignment_from_json(parse_json(text));
  }

  OrderlyView view() {
    if (given("--view")) {
      const Signature fallback = signature();
      return view_from_json(load_json("view", flags_.view), fallback);
    }
    if (!given("--algebra")) {
      throw Error(ErrorKind::InvalidInput, "give --view, or --algebra with --assignment");
    }
    if (!given("--assignment")) {
      throw Error(ErrorKind::InvalidInput, "--algebra needs --assignment");
    }
    return OrderlyView::induced(algebra(), assignment("assignment", flags_.assignment));
  }

  AdmissiblePrefix prefix(const std::string& flag, const std::string& value,
                          const Signature& sig) {
    return prefix_from_json(load_json(flag, value), sig);
  }

  Coloring coloring() {
    if (given("--coloring")) return coloring_from_json(load_json("coloring", flags_.coloring));
    if (given("--mod")) {
      std::set<Integer> accept(flags_.accept.begin(), flags_.accept.end());
      if (accept.empty()) accept.insert(0);
      return Coloring::residue(Integer(flags_.mod), std::move(accept));
    }
    throw Error(ErrorKind::InvalidInput, "give --coloring or --mod/--accept");
  }

  // Check bounds; the index defaults to the view's last covered variable.
  Bounds bounds(const OrderlyView& v, std::size_t default_size) const {
    Bounds b{given("--max-size") ? flags_.max_size : default_size, 0};
    if (given("--max-index")) {
      b.max_index = flags_.max_index;
    } else if (auto c = v.coverage(); c && *c > 0) {
      b.max_index = static_cast<VarIndex>(*c - 1);
    } else {
      throw Error(ErrorKind::InvalidInput, "this view needs --max-index");
    }
    return b;
  }

  SearchConfig search_config(std::size_t default_k, std::size_t default_size,
                             std::size_t default_fr) const {
    SearchConfig cfg;
    cfg.k = given("--k") ? flags_.k : default_k;
    cfg.max_size = given("--max-size") ? flags_.max_size : default_size;
    if (given("--max-index")) cfg.max_index = flags_.max_index;
    cfg.fr_size = given("--fr-size") ? flags_.fr_size : default_fr;
    cfg.threads = flags_.threads;
    if (given("--time-budget-ms")) {
      if (flags_.time_budget_ms <= 0) {
        throw Error(ErrorKind::InvalidInput, "--time-budget-ms must be positive");
      }
      cfg.time_budget = std::chrono::milliseconds(flags_.time_budget_ms);
    }
    return cfg;
  }

  const std::map<std::string, std::string>& digests() const { return digests_; }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

 private:
  Flags& flags_;
  CLI::App* leaf_;
  std::map<std::string, std::string> digests_;
};

Json search_config_json(const SearchConfig& cfg) {
  Json j = {{"k", cfg.k}, {"max_size", cfg.max_size}};
  j["max_index"] = cfg.max_index ? Json(*cfg.max_index) : Json(nullptr);
  j["fr_size"] = cfg.fr_size;
  return j;
}

RunResult check_outcome(Json report, bool passed, const std::string& name,
                         std::size_t checked, std::size_t violations) {
  RunResult o{std::move(report), passed ? kOk : kFailed, ""};
  o.summary = name + ": " + std::to_string(checked) + " checked, " +
              std::to_string(violations) + " violations";
  return o;
}

RunResult cmd_validate(Context& ctx, const Flags& f) {
  const Signature sig = ctx.signature();
  const Term t = parse_term(f.term, sig);
  const bool orderly = is_orderly(t);
  const auto vars = variables_of(t);
  Json report = {{"term", to_string(t, sig)},
                 {"orderly", orderly},
                 {"size", t.size()},
                 {"variables", std::vector<VarIndex>(vars.begin(), vars.end())}};
  return {std::move(report), orderly ? kOk : kFailed,
          std::string(orderly ? "orderly" : "not orderly") + ": " + to_string(t, sig)};
}

RunResult cmd_reduce(Context& ctx, const Flags& f) {
  const Algebra alg = ctx.algebra();
  const Assignment a = ctx.assignment("assignment", f.assignment);
  const AdmissiblePrefix w = ctx.prefix("witness", f.witness, alg.signature());
  alg.check_assignment(a);
  const Assignment b = reduce_sequence(alg, a, w);
  Json report = {{"algebra", to_json(alg)},
                 {"assignment", to_json(std::span<const Value>(a))},
                 {"witness", to_json(w.terms(), alg.signature())},
                 {"reduced", to_json(std::span<const Value>(b))}};
  return {std::move(report), kOk, "reduced to " + std::to_string(b.size()) + " values"};
}

RunResult cmd_enumerate(Context& ctx, const Flags& f) {
  const Signature sig = ctx.signature();
  if (!ctx.given("--max-index")) {
    throw Error(ErrorKind::InvalidInput, "enumerate needs --max-index");
  }
  const Bounds b{ctx.given("--max-size") ? f.max_size : 3, f.max_index};
  const auto terms = enumerate_orderly_terms(sig, b.max_size, b.max_index);
  Json report = {{"bounds", to_json(b)},
                 {"count", terms.size()},
                 {"terms", to_json(std::span<const OrderlyTerm>(terms), sig)}};
  return {std::move(report), kOk, std::to_string(terms.size()) + " orderly terms"};
}

RunResult search_outcome(const SearchResult& r, Json report, const std::string& name) {
  RunResult o{std::move(report), r.outcome == orderly::Outcome::Found ? kOk : kFailed, ""};
  o.summary = name + ": " + std::string(to_string(r.outcome)) + " after " +
              std::to_string(r.stats.prefixes_examined) + " prefixes";
  return o;
}

RunResult cmd_search(Context& ctx, const std::string& which, const Flags& f) {
  const OrderlyView v = ctx.view();
  const SearchConfig cfg = ctx.search_config(3, 1, 5);
  Json report = {{"search", which}, {"view", v.describe()}, {"config", search_config_json(cfg)}};
  SearchResult r;
  if (which == "constant") {
    r = find_constant_reduction(v, cfg);
  } else {
    const Coloring c = ctx.coloring();
    report["coloring"] = to_json(c);
    r = which == "tuple" ? find_tuple_homogeneous(v, c, f.n, cfg)
                         : find_homogeneous_reduction(v, c, cfg);
  }
  report["result"] = to_json(r, v.signature());
  return search_outcome(r, std::move(report), "search " + which);
}

RunResult cmd_sharp_split(Context& ctx, const Flags& f) {
  const Signature sig = ctx.signature();
  const OrderlyTerm t = OrderlyTerm::parse(f.term, sig);
  const SharpPair p = sharp_split(t, sig);
  const bool law = satisfies_occurrence_law(t, p);
  Json report = {{"term", to_string(t, sig)},
                 {"x", to_string(p.x, sig)},
                 {"y", to_string(p.y, sig)},
                 {"occurrence_law", law}};
  return {std::move(report), law ? kOk : kFailed,
          "split into (" + to_string(p.x, sig) + ", " + to_string(p.y, sig) + ")"};
}

RunResult cmd_sharp_witness(Context& ctx, const Flags& f) {
  const Signature sig = ctx.signature();
  Json report = Json::object();
  if (ctx.given("--witness")) {
    const AdmissiblePrefix t = ctx.prefix("witness", f.witness, sig);
    report["witness"] = to_json(t.terms(), sig);
    report["lifted"] = to_json(sharp_witness_transform(t, sig).terms(), sig);
  }
  if (ctx.given("--u-witness")) {
    const AdmissiblePrefix u = ctx.prefix("u-witness", f.u_witness, sig);
    report["u_witness"] = to_json(u.terms(), sig);
    report["paired"] = to_json(sharp_pair_witness(u, sig).terms(), sig);
  }
  if (report.empty()) {
    throw Error(ErrorKind::InvalidInput, "give --witness and/or --u-witness");
  }
  return {std::move(report), kOk, "witness transforms"};
}

RunResult cmd_check(Context& ctx, const std::string& which, const Flags& f) {
  if (which == "pair-sharp") {
    const Algebra inner = ctx.algebra();
    const Assignment pairs = ctx.assignment("assignment", f.assignment);
    if (pairs.empty()) throw Error(ErrorKind::InvalidInput, "no pairs given");
    const Bounds b{ctx.given("--max-size") ? f.max_size : 5,
                   ctx.given("--max-index") ? f.max_index
                                            : static_cast<VarIndex>(pairs.size() - 1)};
    const auto r = check_pair_sharp_equality(inner, pairs, b);
    return check_outcome(to_json(r), r.passed(), which, r.checked, r.violation_count);
  }

  const OrderlyView v = ctx.view();
  if (which == "obstruction") {
    const SearchConfig cfg = ctx.search_config(3, 5, 1);
    const auto r = verify_one_to_one_obstruction(v, cfg);
    return check_outcome(to_json(r), r.passed(), which, r.checked, r.violation_count);
  }
  if (which == "sharp-lift") {
    const Signature& sig = v.signature();
    if (!ctx.given("--witness") || !ctx.given("--u-witness")) {
      throw Error(ErrorKind::InvalidInput, "sharp-lift needs --witness and --u-witness");
    }
    const AdmissiblePrefix t = ctx.prefix("witness", f.witness, sig);
    const AdmissiblePrefix u = ctx.prefix("u-witness", f.u_witness, sig);
    const Bounds b{ctx.given("--max-size") ? f.max_size : 7,
                   ctx.given("--max-index") ? f.max_index : static_cast<VarIndex>(7)};
    const auto r = check_sharp_lift(v, t, u, b);
    const std::size_t checked =
        r.witness_identity.checked + r.pair_identity.checked + r.reduction.checked;
    const std::size_t count = r.witness_identity.violation_count +
                              r.pair_identity.violation_count + r.reduction.violation_count;
    return check_outcome(to_json(r), r.passed(), which, checked, count);
  }

  const Bounds b = ctx.bounds(v, 5);
  if (which == "congruence") {
    const auto r = check_congruence(v, b);
    return check_outcome(to_json(r), r.passed(), which, r.checked, r.violation_count);
  }
  if (which == "injectivity") {
    const auto r = check_injectivity(v, b);
    return check_outcome(to_json(r), r.passed(), which, r.checked, r.violation_count);
  }
  if (which == "prehomogeneous") {
    const auto r = check_prehomogeneous(v, ctx.coloring(), b);
    return check_outcome(to_json(r), r.passed(), which, r.checked, r.violation_count);
  }
  const auto r = is_orderly_semigroup(v, b);
  return check_outcome(to_json(r), r.passed(), which,
                       r.bracketing.checked + r.same_variables.checked,
                       r.bracketing.violation_count + r.same_variables.violation_count);
}

RunResult cmd_reconstruct(Context& ctx, const Flags& f) {
  const OrderlyView v = ctx.view();
  const Bounds b = ctx.bounds(v, 5);
  std::optional<Value> fill;
  if (ctx.given("--fill")) fill = value_from_json(parse_json(f.fill));
  const auto r = reconstruct_algebra(v, b, fill);
  Json report = to_json(r);
  report["bounds"] = to_json(b);
  return {std::move(report), kOk,
          "reconstructed " + std::to_string(r.realized) + " cells, " +
              std::to_string(r.defaulted) + " defaulted"};
}

void add_groups(CLI::App* sub, Flags& f, unsigned groups) {
  sub->add_option("--manifest", f.manifest, "Write the run manifest to this file");
  if (groups & kView) {
    sub->add_option("--signature", f.signature, "Signature JSON (file or inline)");
    sub->add_option("--algebra", f.algebra, "Algebra JSON or built-in name");
    sub->add_option("--assignment", f.assignment, "Assignment JSON array or a..b");
    sub->add_option("--view", f.view, "View descriptor JSON");
  }
  if (groups & kBounds) {
    sub->add_option("--max-size", f.max_size, "Largest term size")->check(CLI::PositiveNumber);
    sub->add_option("--max-index", f.max_index, "Largest variable index");
  }
  if (groups & kSearch) {
    sub->add_option("--k", f.k, "Witness length")->check(CLI::PositiveNumber);
    sub->add_option("--fr-size", f.fr_size, "Largest finite-reduction term size")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget-ms", f.time_budget_ms, "Wall-clock budget");
  }
  if (groups & kColoring) {
    sub->add_option("--coloring", f.coloring, "Coloring JSON");
    sub->add_option("--mod", f.mod, "Residue coloring modulus");
    sub->add_option("--accept", f.accept, "Accepted residues")->delimiter(',');
  }
  if (groups & kWitness) {
    sub->add_option("--witness", f.witness, "Admissible prefix JSON");
    sub->add_option("--u-witness", f.u_witness, "Second admissible prefix JSON");
  }
  if (groups & kTuple) {
    sub->add_option("--n", f.n, "Tuple arity")->check(CLI::PositiveNumber);
  }
  if (groups & kFill) {
    sub->add_option("--fill", f.fill, "Value JSON for unrealized cells");
  }
}

struct Leaf {
  CLI::App* app;
  std::function<RunResult(Context&)> action;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  Flags f;
  CLI::App app("Orderly terms, reductions and homogeneity searches", "orderly");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  std::vector<Leaf> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  unsigned groups, std::function<RunResult(Context&)> action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_groups(sub, f, groups);
    leaves.push_back({sub, std::move(action)});
    return sub;
  };

  leaf(&app, "validate", "Parse a term and report whether it is orderly", kView,
       [&](Context& c) { return cmd_validate(c, f); })
      ->add_option("term", f.term, "Term text")
      ->required();
  leaf(&app, "reduce", "Reduce an assignment by an admissible witness", kView | kWitness,
       [&](Context& c) { return cmd_reduce(c, f); });
  leaf(&app, "enumerate", "List orderly terms in canonical order", kView | kBounds,
       [&](Context& c) { return cmd_enumerate(c, f); });
  leaf(&app, "reconstruct", "Tabulate an algebra from a view's values",
       kView | kBounds | kFill, [&](Context& c) { return cmd_reconstruct(c, f); });

  CLI::App* search = app.add_subcommand("search", "Witness searches");
  search->require_subcommand(1);
  for (const std::string which : {"hindman", "tuple", "constant"}) {
    unsigned groups = kView | kBounds | kSearch;
    if (which != "constant") groups |= kColoring;
    if (which == "tuple") groups |= kTuple;
    leaf(search, which, "Search for a " + which + " reduction", groups,
         [&, which](Context& c) { return cmd_search(c, which, f); });
  }

  CLI::App* sharp = app.add_subcommand("sharp", "Index-doubling split");
  sharp->require_subcommand(1);
  leaf(sharp, "split", "Split a term into its x and y halves", kView,
       [&](Context& c) { return cmd_sharp_split(c, f); })
      ->add_option("term", f.term, "Term text")
      ->required();
  leaf(sharp, "witness", "Lift and pair admissible witnesses", kView | kWitness,
       [&](Context& c) { return cmd_sharp_witness(c, f); });

  CLI::App* check = app.add_subcommand("check", "Bounded exhaustive checks");
  check->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> checks{
      {"congruence", "Equal arguments give equal application values"},
      {"semigroup", "Bracketing and same-variable-set identities"},
      {"prehomogeneous", "Terms with equal variables share a colour"},
      {"sharp-lift", "Substitution identities and values of the sharp lift"},
      {"pair-sharp", "Pair algebra agrees with the sharp view"},
      {"obstruction", "Parity set splits every reduction of a one-to-one view"},
      {"injectivity", "Distinct terms have distinct values"},
  };
  for (const auto& [which, help] : checks) {
    unsigned groups = kView | kBounds;
    if (which == "prehomogeneous") groups |= kColoring;
    if (which == "sharp-lift") groups |= kWitness;
    if (which == "obstruction") groups |= kSearch;
    CLI::App* sub = leaf(check, which, help, groups,
                         [&, which](Context& c) { return cmd_check(c, which, f); });
    if (which == "sharp-lift") sub->alias("claim-1010a");
    if (which == "pair-sharp") sub->alias("thm-0107b");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUserError;
  }

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves) {
    if (l.app->parsed()) chosen = &l;
  }
  if (chosen == nullptr) {
    err << "error: no command given\n";
    return kUserError;
  }
  std::string command = chosen->app->get_name();
  if (chosen->app->get_parent() != &app) {
    command = chosen->app->get_parent()->get_name() + " " + command;
  }

  Context ctx(f, chosen->app);
  RunResult result;
  std::string outcome_text;
  try {
    result = chosen->action(ctx);
    out << result.report.dump(2) << '\n';
    err << result.summary << '\n';
    outcome_text = result.status == kOk ? "ok" : "failed";
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    result.status = kUserError;
    outcome_text = "error:" + std::string(to_string(e.kind()));
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    result.status = kInternal;
    outcome_text = "internal-error";
  }

  Json config = Json::object();
  for (const auto* opt : chosen->app->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "--manifest") {
      continue;
    }
    const auto& values = opt->results();
    config[opt->get_name()] = values.size() == 1 ? Json(values.front()) : Json(values);
  }
  Json inputs = Json::object();
  for (const auto& [name, digest] : ctx.digests()) inputs[name] = digest;
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  Json manifest = {{"manifest",
                    {{"command", command},
                     {"config", config},
                     {"inputs", inputs},
                     {"version", kVersion},
                     {"outcome", outcome_text},
                     {"exit", result.status},
                     {"wall_ms", wall.count()}}}};
  if (!f.manifest.empty()) {
    std::ofstream file(f.manifest);
    file << manifest.dump() << '\n';
  } else {
    err << manifest.dump() << '\n';
  }
  return result.status;
}

}  // namespace orderly::cli
