// nilmat: command-line front end for the embedding and distortion engines.
//
// Exit codes: 0 success, 1 malformed input, 2 verification failure,
// 3 guard violation. NILMAT_THREADS caps internal parallelism.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "nilmat/io.hpp"
#include "nilmat/verify.hpp"

using namespace nilmat;
using io::Json;

namespace {

enum Exit { Ok = 0, ParseFailure = 1, VerificationFailure = 2, GuardViolation = 3 };

/// Raised for failed relator or integrality checks.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "json";
  std::string path;
};

std::size_t thread_cap() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NILMAT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw std::invalid_argument("NILMAT_THREADS must be a positive integer");
    n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string strip_file_prefix(const std::string& s) { return s.rfind("file:", 0) == 0 ? s.substr(5) : s; }

NilpotentPresentation group_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    return io::presentation_from_json(io::parse(read_text(path), path));
  }
  return builtin_presentation(spec);
}

SubgroupGens subgroup_spec(const std::string& spec) {
  const std::string path = strip_file_prefix(spec);
  return io::subgroup_from_json(io::parse(read_text(path), path.empty() ? "stdin" : path));
}

// ---- table rendering

void table_matrix(std::ostream& os, const Json& m, const std::string& indent = "  ") {
  std::size_t width = 1;
  for (const auto& row : m["rows"])
    for (const auto& v : row) width = std::max(width, v.get<std::string>().size());
  for (const auto& row : m["rows"]) {
    os << indent;
    for (const auto& v : row) {
      const std::string s = v.get<std::string>();
      os << std::string(width - s.size() + 1, ' ') << s;
    }
    os << "\n";
  }
}

std::string join(const Json& array) {
  std::string s;
  for (const auto& v : array) {
    if (!s.empty()) s += " ";
    s += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return s;
}

std::string table_embedding(const Json& e) {
  std::ostringstream os;
  os << "d = " << e["d"] << "\nbasis: " << join(e["labels"]) << "\nunitriangular: " << e["unitriangular"]
     << "\nrelators_ok: " << e["relators_ok"] << "\n";
  for (std::size_t k = 0; k < e["generators"].size(); ++k) {
    os << "generator " << k + 1 << ":\n";
    table_matrix(os, e["generators"][k]);
  }
  return os.str();
}

std::string table_report(const Json& r) {
  std::ostringstream os;
  os << "d_H = " << r["d_H"].get<std::string>() << "\nwitness:\n";
  table_matrix(os, r["witness"]);
  for (const auto& s : r["strata"]) os << "stratum m = " << s["m"] << ", t = " << s["t"] << "\n";
  return os.str();
}

std::string table_subgroup(const Json& h) {
  std::ostringstream os;
  os << "N = " << h["N"] << "\n";
  for (std::size_t k = 0; k < h["generators"].size(); ++k) {
    os << "generator " << k + 1 << ":\n";
    table_matrix(os, h["generators"][k]);
  }
  return os.str();
}

std::string table_orderings(const Json& o) {
  std::ostringstream os;
  os << "basis: " << join(o["labels"]) << "\nsearched " << o["searched"] << " orderings, "
     << o["unitriangular_count"] << " unitriangular\n";
  for (const auto& r : o["orderings"])
    os << "  [" << join(r["permutation"]) << "] weights (" << join(r["weights"]) << ") d_H = "
       << r["d_H"].get<std::string>() << "\n";
  return os.str();
}

std::string table_empirical(const Json& t) {
  std::ostringstream os;
  os << "   n  Delta(n)\n";
  for (const auto& e : t["table"]) {
    std::string n = e["n"].dump(), v = e["value"].dump();
    os << std::string(4 - std::min<std::size_t>(4, n.size()), ' ') << n << std::string(10 - std::min<std::size_t>(10, v.size()), ' ')
       << v << (e["capped"].get<bool>() ? "  (search capped)" : "") << "\n";
  }
  return os.str();
}

// ---- commands; each returns the complete output text

std::string render(const Json& j, const Output& out, std::string (*table)(const Json&)) {
  return out.format == "table" ? table(j) : j.dump(2) + "\n";
}

std::vector<std::size_t> index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("not a permutation: " + text);
    out.push_back(std::stoul(item));
  }
  return out;
}

std::string cmd_embed(const std::string& kind, const std::string& group, const std::string& order,
                      std::optional<unsigned> trunc, bool with_module, const Output& out) {
  const auto p = group_spec(group);
  if (kind == "jennings") {
    const unsigned n = trunc.value_or(p.nilpotency_class() + 1);
    if (n < 2) throw std::invalid_argument("--trunc must be at least 2");
    const std::string name = order.empty() ? "weight-lex" : order;
    const JenningsBasis basis = name.find(',') != std::string::npos ? JenningsBasis(p, n, index_list(name))
                                                                    : JenningsBasis(p, n, parse_jennings_order(name));
    const auto r = jennings_embedding(p, basis);
    if (!r.relators_ok) throw VerificationError("relator check failed");
    return render(io::to_json(r, basis), out, table_embedding);
  }
  if (kind == "nickel") {
    const auto mod = closure(p);
    const auto perm = order.empty() || order == "declared" ? declared_ordering(p, mod) : parse_ordering(order, mod);
    const auto r = nickel_embedding(p, mod, perm);
    if (!r.integral) throw VerificationError("module matrices are not integral in this basis");
    if (!r.relators_ok) throw VerificationError("relator check failed");
    Json j = io::to_json(r);
    if (with_module) j["module"] = io::to_json(mod, p);
    return render(j, out, table_embedding);
  }
  throw std::invalid_argument("embedding kind must be jennings or nickel");
}

std::string cmd_distortion(const std::string& subgroup, std::optional<std::size_t> ambient, const Output& out) {
  const auto H = subgroup_spec(subgroup);
  if (ambient && *ambient != H.ambient())
    throw std::invalid_argument("subgroup lives in UT_" + std::to_string(H.ambient()) + ", not UT_" +
                                std::to_string(*ambient));
  if (H.is_trivial()) throw std::invalid_argument("the trivial subgroup has no distortion degree");
  return render(io::to_json(distortion_degree(H)), out, table_report);
}

std::string cmd_construct(std::size_t p, std::size_t q, const Output& out) {
  return render(io::to_json(construct_pq(p, q)), out, table_subgroup);
}

std::string cmd_orderings(const std::string& kind, const std::string& group, bool exhaustive, std::size_t max_dim,
                          const Output& out) {
  const auto p = group_spec(group);
  const SearchMode mode = exhaustive ? SearchMode::Exhaustive : SearchMode::ReportFirst;
  std::vector<OrderingReport> reports;
  std::vector<std::string> labels;
  if (kind == "nickel") {
    const auto mod = closure(p);
    labels = mod.labels();
    reports = ordering_search(mod, mode, thread_cap(), max_dim);
  } else if (kind == "jennings") {
    const JenningsBasis basis(p, p.nilpotency_class() + 1);
    for (const auto& v : basis.monomials()) labels.push_back(monomial_label(v, p));
    std::vector<IntegerMatrix> gens;
    for (std::size_t k = 0; k < p.generator_count(); ++k) gens.push_back(action_matrix(p, basis, k));
    reports = ordering_search(gens, mode, thread_cap(), max_dim);
  } else {
    throw std::invalid_argument("ordering kind must be jennings or nickel");
  }
  Json list = Json::array();
  for (const auto& r : reports)
    if (r.unitriangular) list.push_back(io::to_json(r));
  Json j{{"kind", kind},
         {"group", p.label()},
         {"labels", labels},
         {"searched", reports.size()},
         {"unitriangular_count", list.size()},
         {"orderings", std::move(list)}};
  return render(j, out, table_orderings);
}

std::string cmd_empirical(const std::string& subgroup, std::size_t radius, std::size_t node_cap, const Output& out) {
  const auto H = subgroup_spec(subgroup);
  Json table = Json::array();
  for (const auto& e : empirical_distortion(H, radius, node_cap))
    table.push_back(Json{{"n", e.n}, {"value", e.value}, {"capped", e.capped}});
  return render(Json{{"N", H.ambient()}, {"radius", radius}, {"table", std::move(table)}}, out, table_empirical);
}

int cmd_verify_paper(const Output& out, std::string& text) {
  const bool table = out.format == "table";
  const auto results = run_acceptance_suite(thread_cap(), [&](const CriterionResult& r) {
    if (table && out.path.empty()) std::cout << format_result(r) << std::endl;
  });
  bool all = true;
  Json list = Json::array();
  std::string lines;
  for (const auto& r : results) {
    all = all && r.passed;
    lines += format_result(r) + "\n";
    list.push_back(Json{{"id", r.id},
                        {"title", r.title},
                        {"passed", r.passed},
                        {"detail", r.detail},
                        {"limit_seconds", r.limit_seconds}});
  }
  if (table) text = out.path.empty() ? "" : lines;
  else text = Json{{"passed", all}, {"criteria", std::move(list)}}.dump(2) + "\n";
  return all ? Ok : VerificationFailure;
}

void emit(const std::string& text, const Output& out) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path);
  if (!f) throw std::invalid_argument("cannot write " + out.path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeddings of nilpotent groups into UT_n(Z) and distortion of subgroups"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", out.path, "write the result here instead of standard output");

  std::string kind, group, order, subgroup;
  std::optional<unsigned> trunc;
  std::optional<std::size_t> ambient;
  bool with_module = false, exhaustive = false;
  std::size_t p = 0, q = 0, radius = 0, max_dim = 8, node_cap = 2000000;

  auto* embed = app.add_subcommand("embed", "Jennings or Nickel embedding of a group");
  embed->add_option("kind", kind, "jennings or nickel")->required();
  embed->add_option("group", group, "ut:m[:flavor], heisenberg:n, freenil23 or file:PATH")->required();
  embed->add_option("--order", order,
                    "jennings: weight-lex, scheme-perturbed or a permutation; nickel: labels or 0-based indices");
  embed->add_option("--trunc", trunc, "Jennings truncation n (default class + 1)");
  embed->add_flag("--module", with_module, "include the Nickel function module");

  auto* dist = app.add_subcommand("distortion", "distortion degree of a subgroup of UT_N(Z)");
  dist->add_option("subgroup", subgroup, "SubgroupGens JSON file (default: standard input)");
  dist->add_option("--ambient", ambient, "expected N");

  auto* cons = app.add_subcommand("construct", "subgroup of UT_{p+1}(Z) with distortion degree p/q");
  cons->add_option("--p", p)->required();
  cons->add_option("--q", q)->required();

  auto* ord = app.add_subcommand("orderings", "basis orderings with unitriangular images");
  ord->add_option("kind", kind, "jennings or nickel")->required();
  ord->add_option("group", group)->required();
  ord->add_flag("--exhaustive", exhaustive, "every permutation instead of the first unitriangular one");
  ord->add_option("--max-dim", max_dim, "largest dimension searched exhaustively");

  auto* emp = app.add_subcommand("empirical", "distortion function by breadth-first search");
  emp->add_option("subgroup", subgroup, "SubgroupGens JSON file (default: standard input)");
  emp->add_option("--radius", radius)->required();
  emp->add_option("--node-cap", node_cap, "visited elements per search");

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ParseFailure;
  }

  try {
    std::string text;
    int code = Ok;
    if (*embed) text = cmd_embed(kind, group, order, trunc, with_module, out);
    else if (*dist) text = cmd_distortion(subgroup, ambient, out);
    else if (*cons) text = cmd_construct(p, q, out);
    else if (*ord) text = cmd_orderings(kind, group, exhaustive, max_dim, out);
    else if (*emp) text = cmd_empirical(subgroup, radius, node_cap, out);
    else if (*verify) code = cmd_verify_paper(out, text);
    emit(text, out);
    return code;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return GuardViolation;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return VerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return VerificationFailure;
  }
}
