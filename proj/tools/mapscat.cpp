#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <mapscat/approx.hpp>
#include <mapscat/auslander.hpp>
#include <mapscat/example.hpp>
#include <mapscat/io.hpp>
#include <mapscat/tilting.hpp>

namespace {

using namespace mapscat;
using nlohmann::json;

enum ExitCode : int { kPass = 0, kNegative = 1, kInputError = 2, kBoundExceeded = 3 };

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 0;
  bool timing = false;
  std::string json_path;  // empty: stdout
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// FNV-1a over the input bytes; identifies the input in the report.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

struct LoadedInput {
  std::string path;
  std::string bytes;
  AlgebraFile file;
};

LoadedInput load(const std::string& path, std::optional<Scalar> prime = std::nullopt) {
  LoadedInput in{path, read_file(path), {}};
  in.file = parse_algebra_text(in.bytes, prime);
  return in;
}

ArQuiver knit_or_throw(const AlgebraPtr& alg, std::size_t bound, std::uint64_t seed) {
  ArQuiver q = knit_ar_quiver(alg, bound, true, seed);
  if (!q.complete)
    throw BoundExceeded(q.warnings.empty() ? "dimension bound exceeded" : q.warnings.front());
  return q;
}

// Reports are byte-identical for identical inputs and seed unless --timing adds the elapsed time.
void emit(json report, const CommonOptions& opts) {
  if (opts.timing)
    report["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - opts.start).count();
  std::string text = report.dump(2) + "\n";
  if (opts.json_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.json_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + opts.json_path);
  out << text;
}

json run_report(const std::string& command, const LoadedInput* in, const CommonOptions& opts) {
  json r = {{"command", command}, {"seed", opts.seed}};
  if (in) r["inputs"] = {{"file", in->path}, {"digest", digest(in->bytes)}};
  return r;
}

// The Γ-side corpus of indecomposable map objects, in knitting order.
std::vector<MapObject> map_corpus(const MapsCategory& cat, std::size_t bound, std::uint64_t seed) {
  std::vector<MapObject> out;
  for (const Module& g : knit_or_throw(cat.gamma(), bound, seed).modules()) out.push_back(cat.from_gamma(g));
  return out;
}

MapObject named_map(const AlgebraFile& file, const std::string& name) {
  const MapObject* x = file.find_map(name);
  if (!x) throw std::invalid_argument("unknown map object '" + name + "'");
  return *x;
}

int cmd_ar_quiver(const std::string& path, const std::string& side, std::size_t bound, const std::string& dot_path,
                  const CommonOptions& opts) {
  LoadedInput in = load(path);
  const AlgebraPtr& lambda = in.file.algebra;
  ArQuiver q;
  ModuleLabeler label = [](const Module& m) { return m.dim_vector(); };
  std::optional<MapsCategory> cat;
  if (side == "lambda") {
    q = knit_or_throw(lambda, bound, opts.seed);
    // prefer a name declared in the input file
    label = [&in](const Module& m) {
      for (const NamedModule& n : in.file.modules)
        if (is_indecomposable(n.module) && isomorphism_between_indecomposables(n.module, m)) return n.name;
      return m.dim_vector();
    };
  } else if (side == "gamma") {
    cat.emplace(lambda);
    q = knit_or_throw(cat->gamma(), 2 * bound, opts.seed);
    label = [&cat](const Module& m) { return cat->from_gamma(m).label(); };
  } else {
    AuslanderRealization aus(lambda, knit_or_throw(lambda, bound, opts.seed).modules());
    q = knit_or_throw(aus.algebra(), bound, opts.seed);
  }
  json r = run_report("ar-quiver", &in, opts);
  r["results"] = ar_quiver_json(q, side, label);
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path);
    if (!dot) throw std::runtime_error("cannot write " + dot_path);
    dot << ar_quiver_dot(q, label);
    r["results"]["dot"] = dot_path;
  }
  emit(r, opts);
  return kPass;
}

int cmd_verify_example(const std::string& path, std::optional<Scalar> prime, const CommonOptions& opts) {
  LoadedInput in = load(path, prime);
  ExampleReport rep = verify_worked_example(in.file.algebra);
  json items = json::array();
  for (const ExampleItem& i : rep.items) items.push_back({{"item", i.name}, {"passed", i.passed}, {"detail", i.detail}});
  json r = run_report("verify-example", &in, opts);
  r["results"] = {{"passed", rep.passed()},
                  {"field", in.file.algebra->field().p()},
                  {"lambda_indecomposables", rep.lambda_indecomposables},
                  {"gamma_indecomposables", rep.gamma_indecomposables},
                  {"gamma_projectives", rep.gamma_projectives},
                  {"nonzero_functors", rep.nonzero_functors},
                  {"items", items}};
  emit(r, opts);
  for (const ExampleItem& i : rep.items)
    if (!i.passed) std::cerr << "mismatch: " << i.name << " (" << i.detail << ")\n";
  return rep.passed() ? kPass : kNegative;
}

int cmd_check_tilting(const std::string& path, const std::vector<std::string>& names, const std::string& preset,
                      const std::string& mode, std::size_t bound, const CommonOptions& opts) {
  LoadedInput in = load(path);
  const AlgebraPtr& lambda = in.file.algebra;
  MapsCategory cat(lambda);
  std::vector<Module> lambda_corpus = knit_or_throw(lambda, bound, opts.seed).modules();
  std::vector<MapObject> ts;
  if (preset == "f-projectives") {
    for (const Module& m : lambda_corpus) {
      ts.push_back(identity_object(m));
      ts.push_back(zero_source_object(m));
    }
  } else if (preset == "gamma-projectives") {
    for (const ArVertex& v : knit_or_throw(cat.gamma(), 2 * bound, opts.seed).vertices)
      if (v.projective) ts.push_back(cat.from_gamma(v.module));
  } else if (!preset.empty()) {
    throw std::invalid_argument("unknown preset '" + preset + "'");
  }
  for (const std::string& n : names) ts.push_back(named_map(in.file, n));
  if (ts.empty()) throw std::invalid_argument("no objects given");
  TiltingReport rep = mode == "classical" ? check_classical_tilting(cat, ts, lambda_corpus)
                                          : check_generalized_tilting(cat, ts, lambda_corpus);
  json objects = json::array();
  for (const MapObject& t : ts) objects.push_back(t.label());
  json r = run_report("check-tilting", &in, opts);
  r["results"] = {{"mode", mode}, {"objects", objects}, {"report", tilting_report_json(rep)}};
  AuslanderRealization aus(lambda, lambda_corpus);
  TiltingReport cross = check_tilting_over_auslander(aus, ts, mode == "classical" ? 1 : 2);
  r["results"]["functor_side"] = tilting_report_json(cross);
  r["results"]["agree"] = cross.tilting() == rep.tilting();
  emit(r, opts);
  return rep.tilting() ? kPass : kNegative;
}

int cmd_approx(const std::string& path, const std::string& object, const std::string& corpus_arg,
               const std::string& side, std::size_t bound, bool transport, const CommonOptions& opts) {
  LoadedInput in = load(path);
  const AlgebraPtr& lambda = in.file.algebra;
  MapsCategory cat(lambda);
  MapObject x = named_map(in.file, object);
  std::vector<MapObject> all = map_corpus(cat, 2 * bound, opts.seed);
  std::vector<MapObject> corpus;
  std::string kind;
  if (corpus_arg == "epimaps" || corpus_arg == "monomaps") {
    kind = corpus_arg;
    for (const MapObject& c : all)
      if (kind == "epimaps" ? is_epimap(c) : is_monomap(c)) corpus.push_back(c);
  } else {
    std::stringstream ss(corpus_arg);
    for (std::string n; std::getline(ss, n, ',');) corpus.push_back(named_map(in.file, n));
    kind = "named";
  }
  MapApproximation a;
  if (kind == "epimaps")
    a = side == "right" ? right_approx_epimaps(cat, x, corpus) : left_approx_epimaps(cat, x, corpus);
  else if (kind == "monomaps")
    a = side == "right" ? right_approx_monomaps(cat, x, corpus) : left_approx_monomaps(cat, x, corpus);
  else
    a = side == "right" ? right_approx_from_list(cat, x, corpus) : left_approx_from_list(cat, x, corpus);
  json r = run_report("approx", &in, opts);
  r["results"] = {{"object", x.label()},
                  {"corpus", kind},
                  {"corpus_size", corpus.size()},
                  {"side", side},
                  {"approximation", map_morphism_json(a.approximation)},
                  {"certificate", approx_certificate_json(a.certificate)}};
  bool ok = a.certificate.certified;
  if (transport && side == "right") {
    AuslanderRealization aus(lambda, knit_or_throw(lambda, bound, opts.seed).modules());
    FunctorApproximation t = transport_approx_via_phi(aus, a.approximation, corpus);
    MapApproximation back = reconstruct_maps_approx_from_phi(cat, aus, t, corpus);
    r["results"]["transported"] = approx_certificate_json(t.certificate);
    r["results"]["reconstructed"] = {{"approximation", map_morphism_json(back.approximation)},
                                     {"certificate", approx_certificate_json(back.certificate)}};
    ok = ok && t.certificate.certified && back.certificate.certified;
  }
  emit(r, opts);
  if (!a.certificate.certified) std::cerr << "certification failed: " << a.certificate.failure << "\n";
  return ok ? kPass : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maps categories, Auslander-Reiten theory and finitely presented functors over F_p"};
  app.require_subcommand(1);
  CommonOptions opts;
  auto common = [&opts](CLI::App* sub) {
    sub->add_option("--seed", opts.seed, "seed for randomized decomposition")->default_val(0);
    sub->add_flag("--timing", opts.timing, "include wall-clock timing in the report");
    sub->add_option("--json", opts.json_path, "write the JSON report here instead of stdout");
  };
  std::string file = MAPSCAT_DEFAULT_EXAMPLE;
  std::size_t bound = 40;

  auto* ar = app.add_subcommand("ar-quiver", "knit an Auslander-Reiten quiver");
  std::string side = "gamma", dot_path;
  ar->add_option("file", file, "algebra description")->required();
  ar->add_option("--side", side, "lambda, gamma or functors")->check(CLI::IsMember({"lambda", "gamma", "functors"}));
  ar->add_option("--dim-bound", bound, "largest Λ-dimension explored (doubled on the Γ side)");
  ar->add_option("--dot", dot_path, "write a DOT rendering here");
  common(ar);

  auto* ex = app.add_subcommand("verify-example", "reproduce the K[1->2] example");
  std::optional<Scalar> prime;
  ex->add_option("file", file, "algebra description (defaults to the bundled K[1->2])");
  ex->add_option("--prime", prime, "override the field");
  common(ex);

  auto* tilt = app.add_subcommand("check-tilting", "check a set of map objects for relative tilting");
  std::vector<std::string> names;
  std::string preset, mode = "generalized";
  tilt->add_option("file", file, "algebra description")->required();
  tilt->add_option("--objects", names, "named map objects")->delimiter(',');
  tilt->add_option("--preset", preset, "f-projectives or gamma-projectives");
  tilt->add_option("--mode", mode, "classical or generalized")->check(CLI::IsMember({"classical", "generalized"}));
  tilt->add_option("--dim-bound", bound, "largest Λ-dimension explored");
  common(tilt);

  auto* approx = app.add_subcommand("approx", "certified approximation of a map object");
  std::string object, corpus = "epimaps", approx_side = "right";
  bool transport = false;
  approx->add_option("file", file, "algebra description")->required();
  approx->add_option("--object", object, "named map object")->required();
  approx->add_option("--corpus", corpus, "epimaps, monomaps, or a comma-separated list of named map objects");
  approx->add_option("--side", approx_side, "left or right")->check(CLI::IsMember({"left", "right"}));
  approx->add_flag("--transport", transport, "also transport through Φ and reconstruct (right side)");
  approx->add_option("--dim-bound", bound, "largest Λ-dimension explored");
  common(approx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  opts.start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    if (*ar)
      code = cmd_ar_quiver(file, side, bound, dot_path, opts);
    else if (*ex)
      code = cmd_verify_example(file, prime, opts);
    else if (*tilt)
      code = cmd_check_tilting(file, names, preset, mode, bound, opts);
    else
      code = cmd_approx(file, object, corpus, approx_side, bound, transport, opts);
  } catch (const BoundExceeded& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
