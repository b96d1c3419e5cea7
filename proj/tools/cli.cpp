#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "gbs/embed.hpp"
#include "gbs/error.hpp"
#include "gbs/graph.hpp"
#include "gbs/modular.hpp"
#include "gbs/tree.hpp"
#include "gbs/verdicts.hpp"
#include "gbs/words.hpp"

namespace gbs::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  std::string builtin;
  std::string input;
  std::string positional;
  int depth = kDefaultVerdictDepth;
  std::optional<int> radius;
  std::string p = "2";
  std::uint64_t seed = kDefaultSeed;
  int precision_bits = 30;
  bool json = false;
  std::string dot;
  std::string csv = "compression.csv";
  std::string word;
  std::string embed_case = "generic";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Gbs load(const RunConfig& c) {
  const std::string path = !c.input.empty() ? c.input : c.positional;
  const int sources = (c.builtin.empty() ? 0 : 1) + (path.empty() ? 0 : 1);
  if (sources != 1) throw Error(ErrorCode::BadParams, "give exactly one of --builtin, --input or a path");
  if (!c.builtin.empty()) return builtin_from_spec(c.builtin);
  return parse_gbs(slurp(path));
}

Rat parse_p(const std::string& s) {
  Rat p;
  try {
    p = Rat(s);
    p.canonicalize();
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::BadParams, "--p expects a rational number, got '" + s + "'");
  }
  if (p < 1) throw Error(ErrorCode::BadParams, "--p must be >= 1");
  return p;
}

Json rat_json(const Rat& r) { return r.get_str(); }

Json vector_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

Json matrix_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

Json number_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json summary_json(const Gbs& g) {
  Json s;
  s["rank"] = g.n();
  Json vs = Json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) vs.push_back(g.vertex_name(v));
  s["vertices"] = vs;
  Json es = Json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& d = g.data().edges[e];
    es.push_back({{"id", d.id}, {"from", d.from}, {"to", d.to}, {"tree", g.in_tree(2 * e)}});
  }
  s["edges"] = es;
  s["base"] = g.vertex_name(g.base());
  s["d"] = g.rank_d();
  return s;
}

Json modular_json(const Gbs& g, const ModularData& md) {
  Json tau;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) tau[g.vertex_name(v)] = matrix_json(md.tau[v]);
  Json mu;
  for (std::size_t i = 0; i < md.mu_stable.size(); ++i) mu[g.oriented_name(g.stable_edges()[i])] = matrix_json(md.mu_stable[i]);
  return {{"tau", tau}, {"mu_stable", mu}};
}

Json affine_json(const AffineMap& f) { return {{"linear", matrix_json(f.linear)}, {"translation", vector_json(f.translation)}}; }

Json ping_pong_json(const Gbs& g, const PingPongCertificate& c) {
  return {{"first", format_word(g, c.first)},
          {"second", format_word(g, c.second)},
          {"translation_lengths", {c.length_first, c.length_second}},
          {"overlap", c.overlap},
          {"verified", verify_ping_pong(g, c)}};
}

Json schottky_json(const Gbs& g, const ModularData& md, const SchottkyCertificate& c) {
  Json cones = Json::array();
  for (std::size_t i = 0; i < 4; ++i)
    cones.push_back({{"attracting", vector_json(c.attracting[i])}, {"dual", vector_json(c.dual[i])}});
  return {{"word1", format_free_word(g, c.word1)},
          {"word2", format_free_word(g, c.word2)},
          {"power", c.power},
          {"epsilon", rat_json(c.epsilon)},
          {"cones", cones},
          {"verified", verify_schottky(md.mu_stable, c)}};
}

std::string rat_list(const std::vector<Rat>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " or " : "") + v[i].get_str();
  return s;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const ModularData md = compute_modular(g);
  const Rat p = parse_p(c.p);
  const AmenabilityVerdict am = decide_amenable(g, c.depth);
  const HaagerupReport hr = haagerup_report(md, g, c.depth);
  const DistortionReport dr = distortion_report(md, g);
  const CompressionReport cr = compression_report(g, p, am);
  const StructureReport sr = structure_report(md, g, hr.closure);

  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "analyze";
    doc["input"] = summary_json(g);
    doc["modular"] = modular_json(g, md);
    doc["amenable"] = {{"status", to_string(am.status)},
                       {"reason", am.reason ? Json(to_string(*am.reason)) : Json(nullptr)},
                       {"depth", am.depth},
                       {"note", am.note}};
    doc["closure"] = {{"status", to_string(hr.closure.status)},
                      {"rule", hr.closure.rule ? Json(to_string(*hr.closure.rule)) : Json(nullptr)},
                      {"depth", hr.closure.depth},
                      {"form", hr.closure.form ? matrix_json(*hr.closure.form) : Json(nullptr)}};
    doc["haagerup"] = to_string(hr.haagerup);
    doc["weakly_amenable"] = to_string(hr.weakly_amenable);
    doc["lambda"] = hr.lambda ? Json(*hr.lambda) : Json(nullptr);
    doc["exp_distorted"] = to_string(dr.exp_distorted);
    Json distal = Json::array();
    for (const auto& v : dr.distal_dual_part) distal.push_back(vector_json(v));
    doc["distortion"] = {{"distal_dual_part", distal}, {"certified", dr.certified}, {"note", dr.note}};
    doc["p"] = rat_json(p);
    doc["alpha_p"] = cr.alpha_p ? rat_json(*cr.alpha_p) : Json(nullptr);
    Json sharp = Json::array();
    for (const auto& x : cr.alpha_p_sharp) sharp.push_back(rat_json(x));
    doc["alpha_p_sharp"] = sharp;
    doc["compression"] = {{"applicable", cr.applicable},
                          {"alpha_p", cr.alpha_p_symbolic},
                          {"alpha_p_sharp", cr.alpha_p_sharp_symbolic},
                          {"assumptions", cr.assumptions}};
    doc["structure"] = {{"kernel_mu_free", sr.kernel_free},
                        {"free_by_amenable", to_string(sr.free_by_amenable)},
                        {"reason", sr.reason}};
    doc["certificates"] = {
        {"ping_pong", am.certificate ? ping_pong_json(g, *am.certificate) : Json(nullptr)},
        {"schottky", hr.closure.certificate ? schottky_json(g, md, *hr.closure.certificate) : Json(nullptr)}};
    emit(out, doc);
    return kOk;
  }

  out << "rank n = " << g.n() << ", vertices = " << g.vertex_count() << ", edges = " << g.edge_count()
      << ", d = " << g.rank_d() << '\n';
  for (std::size_t i = 0; i < md.mu_stable.size(); ++i)
    out << "mu(t_" << g.oriented_name(g.stable_edges()[i]) << ") = " << md.mu_stable[i] << '\n';
  out << "amenable: " << to_string(am.status);
  if (am.reason) out << " (" << to_string(*am.reason) << ")";
  if (am.status == AmenabilityVerdict::Status::Unknown) out << " [depth " << am.depth << "]";
  out << '\n';
  if (am.certificate)
    out << "  ping-pong: " << format_word(g, am.certificate->first) << " , " << format_word(g, am.certificate->second)
        << " (lengths " << am.certificate->length_first << ", " << am.certificate->length_second << "; overlap "
        << am.certificate->overlap << ")\n";
  out << "closure of mu(H_d): " << to_string(hr.closure.status);
  if (hr.closure.rule) out << " (" << to_string(*hr.closure.rule) << ")";
  out << '\n';
  if (hr.closure.certificate)
    out << "  schottky: " << format_free_word(g, hr.closure.certificate->word1) << " , "
        << format_free_word(g, hr.closure.certificate->word2) << " ^" << hr.closure.certificate->power
        << ", eps = " << hr.closure.certificate->epsilon << '\n';
  out << "haagerup: " << to_string(hr.haagerup) << "\nweakly amenable: " << to_string(hr.weakly_amenable) << '\n';
  out << "lambda: " << (hr.lambda ? std::to_string(*hr.lambda) : std::string("-")) << '\n';
  out << "exponentially distorted: " << to_string(dr.exp_distorted) << " (distal dual part of dimension "
      << dr.distal_dual_part.size() << (dr.certified ? "" : ", uncertified") << "; " << dr.note << ")\n";
  if (cr.applicable)
    out << "alpha_p = " << cr.alpha_p_symbolic << ", alpha_p# = " << cr.alpha_p_sharp_symbolic << "; at p = " << p
        << ": " << *cr.alpha_p << ", " << rat_list(cr.alpha_p_sharp) << '\n';
  else
    out << "compression exponents: not covered (" << cr.assumptions.front() << ")\n";
  out << "Ker mu is free; free-by-amenable: " << to_string(sr.free_by_amenable) << " (" << sr.reason << ")\n";
  return kOk;
}

int cmd_mu(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const ModularData md = compute_modular(g);
  std::optional<AffineMap> image;
  if (!c.word.empty()) image = mu_eval(md, g, parse_word(g, c.word));
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "mu";
    doc["input"] = summary_json(g);
    doc["modular"] = modular_json(g, md);
    if (image) doc["word"] = {{"word", c.word}, {"image", affine_json(*image)}};
    emit(out, doc);
    return kOk;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "tau(" << g.vertex_name(v) << ") = " << md.tau[v] << '\n';
  for (std::size_t i = 0; i < md.mu_stable.size(); ++i)
    out << "mu(t_" << g.oriented_name(g.stable_edges()[i]) << ") = " << md.mu_stable[i] << '\n';
  if (image) out << "mu(" << c.word << ") = x -> " << image->linear << " x + " << to_string(image->translation) << '\n';
  return kOk;
}

int cmd_nf(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  if (c.word.empty()) throw Error(ErrorCode::BadParams, "nf needs --word");
  const Word w = parse_word(g, c.word);
  const NormalForm nf = normal_form(g, w);
  const FreeWord f = phi(g, nf);
  const TreeVertex x = act(g, nf, base_vertex(g));
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "nf";
    doc["word"] = c.word;
    doc["normal_form"] = nf.str(g);
    doc["identity"] = nf.is_identity();
    doc["edge_length"] = nf.edge_length();
    doc["phi"] = format_free_word(g, f);
    doc["base_image"] = x.str(g);
    emit(out, doc);
    return kOk;
  }
  out << "normal form: " << nf.str(g) << (nf.is_identity() ? "  (identity)" : "") << '\n';
  out << "edge length: " << nf.edge_length() << '\n';
  out << "phi: " << format_free_word(g, f) << '\n';
  out << "base vertex -> " << x.str(g) << '\n';
  return kOk;
}

int cmd_ball(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const int r = c.radius.value_or(4);
  const Ball b = ball(g, r);
  std::vector<std::size_t> spheres;
  for (int k = 0; k <= r; ++k) spheres.push_back(b.sphere(k).size());
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "ball";
    doc["radius"] = r;
    doc["size"] = b.size();
    doc["spheres"] = spheres;
    emit(out, doc);
    return kOk;
  }
  out << "ball of radius " << r << ": " << b.size() << " elements\n";
  for (int k = 0; k <= r; ++k) out << "  |S(" << k << ")| = " << spheres[static_cast<std::size_t>(k)] << '\n';
  return kOk;
}

int cmd_tree_ball(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const int r = c.radius.value_or(3);
  const TreeBall tb = tree_ball(g, base_vertex(g), r);
  if (!c.dot.empty()) {
    std::ofstream f(c.dot);
    if (!f) throw Error(ErrorCode::BadParams, "cannot write '" + c.dot + "'");
    f << to_dot(g, tb);
  }
  std::vector<std::size_t> spheres;
  for (int k = 0; k <= r; ++k) spheres.push_back(tb.sphere_size(k));
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "tree-ball";
    doc["radius"] = r;
    doc["base_degree"] = neighbors(g, base_vertex(g)).size();
    doc["size"] = tb.vertices.size();
    doc["spheres"] = spheres;
    if (!c.dot.empty()) doc["dot"] = c.dot;
    emit(out, doc);
    return kOk;
  }
  out << "base vertex degree: " << neighbors(g, base_vertex(g)).size() << '\n';
  out << "tree ball of radius " << r << ": " << tb.vertices.size() << " vertices\n";
  for (int k = 0; k <= r; ++k) out << "  |S(" << k << ")| = " << spheres[static_cast<std::size_t>(k)] << '\n';
  if (!c.dot.empty()) out << "DOT written to " << c.dot << '\n';
  return kOk;
}

double tolerance(const RunConfig& c) {
  if (c.precision_bits < 8 || c.precision_bits > 50) throw Error(ErrorCode::BadParams, "--precision-bits must be in [8, 50]");
  return std::ldexp(1.0, -c.precision_bits);
}

Json point_json(const Gbs& g, const EmbeddingMap& m, const EmbeddedPoint& pt) {
  Json j;
  j["tree"] = pt.tree.str(g);
  switch (m.kind()) {
    case EmbeddingCase::Generic:
      j["translation"] = pt.translation;
      j["free"] = format_free_word(g, pt.free);
      break;
    case EmbeddingCase::NOneHyperbolic:
      j["free"] = format_free_word(g, pt.free);
      j["hyperbolic"] = {pt.hyperbolic.real(), pt.hyperbolic.imag()};
      break;
    case EmbeddingCase::DOneSplit:
      j["expanding"] = {{"v", pt.expanding.v}, {"t", pt.expanding.t}};
      j["contracting"] = {{"v", pt.contracting.v}, {"t", pt.contracting.t}};
      break;
  }
  return j;
}

std::string doubles(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

int cmd_embed(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const EmbeddingMap m(g, parse_embedding_case(c.embed_case), tolerance(c));
  const std::string word = c.word.empty() ? "1" : c.word;
  const EmbeddedPoint pt = m.embed(parse_word(g, word));
  const EmbeddedPoint origin = m.embed(NormalForm::identity(g));
  const double d = m.distance(origin, pt);
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "embed";
    doc["case"] = to_string(m.kind());
    doc["word"] = word;
    doc["point"] = point_json(g, m, pt);
    doc["distance_from_identity"] = d;
    emit(out, doc);
    return kOk;
  }
  out << "case: " << to_string(m.kind()) << "\nword: " << word << "\ntree: " << pt.tree.str(g) << '\n';
  std::ostringstream os;
  os.precision(12);
  switch (m.kind()) {
    case EmbeddingCase::Generic:
      os << "translation: " << doubles(pt.translation) << "\nfree: " << format_free_word(g, pt.free) << '\n';
      break;
    case EmbeddingCase::NOneHyperbolic:
      os << "free: " << format_free_word(g, pt.free) << "\nhyperbolic: " << pt.hyperbolic.real() << " + "
         << pt.hyperbolic.imag() << "i\n";
      break;
    case EmbeddingCase::DOneSplit:
      os << "expanding: " << doubles(pt.expanding.v) << " at height " << pt.expanding.t
         << "\ncontracting: " << doubles(pt.contracting.v) << " at height " << pt.contracting.t << '\n';
      break;
  }
  os << "distance from identity: " << d << '\n';
  out << os.str();
  return kOk;
}

int cmd_compression(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const EmbeddingMap m(g, parse_embedding_case(c.embed_case), tolerance(c));
  const double p = parse_p(c.p).get_d();
  const CompressionEstimate est = estimate_compression(m, c.radius.value_or(10), p, c.seed);
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    if (!f) throw Error(ErrorCode::BadParams, "cannot write '" + c.csv + "'");
    f << est.csv();
  }
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "compression";
    doc["case"] = to_string(m.kind());
    doc["radius"] = est.radius;
    doc["p"] = c.p;
    doc["seed"] = est.seed;
    doc["sampled"] = est.sampled;
    doc["pairs"] = est.pair_count;
    Json rho = Json::array();
    for (std::size_t r = 1; r < est.rho.size(); ++r) rho.push_back(number_json(est.rho[r]));
    doc["rho"] = rho;
    doc["exponent"] = est.exponent;
    doc["raw_slope"] = est.raw_slope;
    doc["fit_from"] = est.fit_from;
    doc["band"] = {est.raw_slope - 2 * est.standard_error, est.raw_slope + 2 * est.standard_error};
    doc["residual_rms"] = est.residual_rms;
    doc["upper_lipschitz"] = est.upper_lipschitz;
    doc["qi"] = est.qi_multiplicative
                    ? Json{{"multiplicative", *est.qi_multiplicative}, {"additive", *est.qi_additive}}
                    : Json(nullptr);
    if (!c.csv.empty()) doc["csv"] = c.csv;
    emit(out, doc);
    return kOk;
  }
  std::ostringstream os;
  os.precision(6);
  os << "case " << to_string(m.kind()) << ", radius " << est.radius << ", p = " << c.p << ", seed " << est.seed
     << (est.sampled ? " (sampled)" : " (all pairs)") << ", " << est.pair_count << " pairs\n";
  os << "fitted exponent: " << est.exponent << " (slope " << est.raw_slope << " +- " << 2 * est.standard_error
     << ", r >= " << est.fit_from << ", residual rms " << est.residual_rms << ")\n";
  if (est.qi_multiplicative)
    os << "linear fit: rho(r) >= r / " << *est.qi_multiplicative << " - " << *est.qi_additive << '\n';
  if (!c.csv.empty()) os << "CSV written to " << c.csv << '\n';
  out << os.str();
  return kOk;
}

int cmd_properness(const RunConfig& c, std::ostream& out) {
  const Gbs g = load(c);
  const EmbeddingMap m(g, parse_embedding_case(c.embed_case), tolerance(c));
  const int r = c.radius.value_or(8);
  const std::vector<double> profile = properness_profile(m, r);
  if (c.json) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "properness";
    doc["case"] = to_string(m.kind());
    doc["radius"] = r;
    Json prof = Json::array();
    for (double x : profile) prof.push_back(number_json(x));
    doc["profile"] = prof;
    emit(out, doc);
    return kOk;
  }
  std::ostringstream os;
  os.precision(8);
  for (std::size_t k = 0; k < profile.size(); ++k) os << "R = " << k << ": " << profile[k] << '\n';
  out << os.str();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generalized Baumslag-Solitar groups: normal forms, modular map, verdicts and embeddings", "gbs"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> commands{
      {"analyze", "print every verdict"},
      {"mu", "modular map"},
      {"nf", "normal form of --word"},
      {"ball", "word-metric ball sizes"},
      {"tree-ball", "Bass-Serre tree ball (--dot for Graphviz)"},
      {"embed", "coordinates of --word under an embedding"},
      {"compression", "empirical compression exponent"},
      {"properness", "properness profile"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("path", cfg.positional, "input document");
    sub->add_option("--builtin", cfg.builtin, "built-in fixture, name[:p1,p2,...]");
    sub->add_option("--input", cfg.input, "input document");
    sub->add_option("--depth", cfg.depth, "search depth for certificates")->check(CLI::PositiveNumber);
    sub->add_option("--radius", cfg.radius, "ball radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--p", cfg.p, "exponent p >= 1");
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--precision-bits", cfg.precision_bits, "numeric tolerance 2^-bits");
    sub->add_flag("--json", cfg.json, "machine-readable output");
    sub->add_option("--dot", cfg.dot, "write the tree ball as DOT");
    sub->add_option("--csv", cfg.csv, "CSV path for compression");
    sub->add_option("--word", cfg.word, "group element");
    sub->add_option("--case", cfg.embed_case, "embedding: generic|d1|n1");
    sub->callback([&cfg, name = name] { cfg.subcommand = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  static const std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> dispatch{
      {"analyze", cmd_analyze},     {"mu", cmd_mu},       {"nf", cmd_nf},
      {"ball", cmd_ball},           {"tree-ball", cmd_tree_ball}, {"embed", cmd_embed},
      {"compression", cmd_compression}, {"properness", cmd_properness},
  };
  try {
    return dispatch.at(cfg.subcommand)(cfg, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::ResourceLimit ? kResourceLimit : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace gbs::cli
