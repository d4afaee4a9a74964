#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynclass/cli.hpp"
#include "dynclass/corpus.hpp"

using namespace dynclass;

namespace {

constexpr int kOk = 0;
constexpr int kContradiction = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ScaleFlags {
  std::string scale;
  std::string grid;
  std::uint32_t horizon = 40;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scale", scale, "word scale, e.g. ell=2,L=24,H=32,K=8");
    cmd->add_option("--grid", grid, "interval grid, e.g. eps=1/64");
    cmd->add_option("--horizon", horizon, "interval horizon")->check(CLI::PositiveNumber);
  }

  ClassifyScales resolve() const {
    ClassifyScales sc;
    if (!scale.empty()) sc.words = parse_word_scale(scale);
    if (!grid.empty()) {
      if (grid.rfind("eps=", 0) != 0) throw Error(ErrorCode::InvalidArgument, "--grid expects eps=p/q");
      sc.eps = grid.substr(4);
      if (parse_rational(sc.eps) <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    }
    sc.horizon = horizon;
    return sc;
  }
};

int input_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kInputError;
}

int classify_cmd(const std::string& file, const std::string& props, const ScaleFlags& flags,
                 const std::string& format) {
  auto d = parse_system_file(read_file(file));
  auto report = run_classify(d, parse_property_list(props), flags.resolve());
  std::cout << emit_report(report, format == "json" ? ReportFormat::Json : ReportFormat::Text);
  return report.contradictions.empty() ? kOk : kContradiction;
}

int hitting_cmd(const std::string& file, const std::string& u, const std::string& v, std::size_t max_n) {
  auto d = parse_system_file(read_file(file));
  auto h = hitting_set_of(d, u, v, max_n);
  std::cout << "N([" << u << "],[" << v << "]) via " << h.method << "\n";
  if (h.exact) {
    std::cout << "set: " << h.exact->describe() << "  (" << h.exact->to_string() << ")\n";
    std::cout << "class: " << to_string(h.exact->classify()) << "\n";
  }
  std::cout << "members <= " << max_n << ":";
  bool any = false;
  for (std::size_t n = 1; n <= h.members.size(); ++n) {
    if (h.members[n - 1]) {
      std::cout << " " << n;
      any = true;
    }
  }
  std::cout << (any ? "" : " none") << "\n";
  return kOk;
}

int corpus_list() {
  for (const auto& e : corpus_entries()) {
    std::cout << e.id << "  [" << e.system.type() << "]  " << e.system.description << "\n";
    for (const auto& [p, x] : e.expected) {
      std::cout << "    " << to_string(p) << " = " << to_string(x.truth) << (x.certified ? "" : " (uncertified)")
                << "  " << x.anchor << "\n";
    }
  }
  return kOk;
}

int corpus_run(const ScaleFlags& flags, bool custom_scale, const std::vector<std::string>& only,
               const std::string& format) {
  CorpusOverrides o;
  if (custom_scale) {
    auto sc = flags.resolve();
    if (!flags.scale.empty()) o.words = sc.words;
    if (!flags.grid.empty()) o.eps = sc.eps;
    o.horizon = sc.horizon;
  }
  auto results = run_corpus(o, only);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    if (format == "json") {
      std::cout << emit_report(r.report, ReportFormat::Json);
      continue;
    }
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  (" << std::fixed << std::setprecision(2) << r.seconds
              << " s)\n";
    for (const auto& f : r.failures) std::cout << "    " << f << "\n";
    for (const auto& n : r.report.non_implications) std::cout << "    instantiates [" << n.statement << "] " << n.label << "\n";
  }
  std::cout << (all ? "corpus: all entries pass\n" : "corpus: failures present\n");
  return all ? kOk : 1;
}

int corpus_export(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& e : corpus_entries()) {
    auto path = std::filesystem::path(dir) / (e.id + ".json");
    std::ofstream out(path);
    out << emit_system_file(e.system);
    std::cout << path.string() << "\n";
  }
  return kOk;
}

int lattice_explain(const std::string& file, const ScaleFlags& flags) {
  auto d = parse_system_file(read_file(file));
  auto sc = flags.resolve();
  auto report = run_classify(d, {}, sc);
  std::cout << "system: " << report.system_id << " (" << report.system_type << ")\n";
  std::cout << "flags: open_map=" << report.flags.open_map << " invertible=" << report.flags.invertible
            << " trivial=" << report.flags.trivial << "\n\nedges:\n";
  for (const auto& e : edge_ledger()) {
    std::cout << "  " << (edge_applies(e, report.flags) ? "[on]  " : "[off] ") << e.rule_id << ": " << e.describe()
              << "  -- " << e.citation << "\n";
  }
  std::cout << "\nderivations:\n";
  bool any = false;
  for (const auto& row : report.rows) {
    if (!row.verdict.provenance.propagated) continue;
    any = true;
    std::cout << "  " << to_string(row.property) << " " << to_string(row.verdict.status) << "\n";
    for (const auto& step : row.verdict.provenance.chain) std::cout << "      " << step << "\n";
  }
  if (!any) std::cout << "  none\n";
  std::cout << "\ndirect:\n";
  for (const auto& row : report.rows) {
    if (row.verdict.provenance.propagated) continue;
    std::cout << "  " << to_string(row.property) << " " << to_string(row.verdict.status) << " ("
              << row.verdict.evidence.summary << ")\n";
  }
  std::cout << "\nnon-implications:\n";
  for (const auto& n : report.non_implications) std::cout << "  [" << n.statement << "] " << n.label << "\n";
  for (const auto& g : report.gaps) std::cout << "  " << g << "\n";
  for (const auto& t : report.tensions) std::cout << "tension: " << t << "\n";
  if (report.contradictions.empty()) {
    std::cout << "\ncontradictions: none\n";
    return kOk;
  }
  for (const auto& c : report.contradictions) std::cout << "CONTRADICTION: " << c << "\n";
  return kContradiction;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify subshifts and interval maps against the transitivity hierarchy"};
  app.require_subcommand(1);

  std::string file, props, format = "text";
  ScaleFlags flags;

  auto* classify = app.add_subcommand("classify", "classify a system file");
  classify->add_option("file", file, "system description (JSON)")->required();
  classify->add_option("--props", props, "comma-separated properties, e.g. TT,ST");
  classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  flags.attach(classify);

  std::string u, v;
  std::size_t max_n = 30;
  auto* hitting = app.add_subcommand("hitting-set", "hitting-time set N([u],[v])");
  hitting->add_option("file", file)->required();
  hitting->add_option("--u", u)->required();
  hitting->add_option("--v", v)->required();
  hitting->add_option("--max-n", max_n)->check(CLI::Range(1, 100000));

  auto* corpus = app.add_subcommand("corpus", "built-in example systems");
  std::string action = "list", dir = "corpus";
  std::vector<std::string> only;
  corpus->add_option("action", action)->check(CLI::IsMember({"list", "run", "export"}));
  corpus->add_option("--dir", dir, "export directory");
  corpus->add_option("--only", only, "entry ids");
  corpus->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  ScaleFlags corpus_flags;
  corpus_flags.attach(corpus);

  auto* lattice = app.add_subcommand("lattice", "implication lattice");
  std::string lattice_action;
  lattice->add_option("action", lattice_action)->required()->check(CLI::IsMember({"explain"}));
  lattice->add_option("file", file)->required();
  flags.attach(lattice);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify) return classify_cmd(file, props, flags, format);
    if (*hitting) return hitting_cmd(file, u, v, max_n);
    if (*corpus) {
      if (action == "list") return corpus_list();
      if (action == "export") return corpus_export(dir);
      bool custom = corpus->count("--scale") || corpus->count("--grid") || corpus->count("--horizon");
      return corpus_run(corpus_flags, custom, only, format);
    }
    if (*lattice) return lattice_explain(file, flags);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Contradiction) {
      std::cerr << "error: " << e.what() << "\n";
      return kContradiction;
    }
    return input_error(e);
  } catch (const std::exception& e) {
    return input_error(e);
  }
  return kOk;
}
