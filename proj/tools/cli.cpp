#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>

#include "causal/bbn.hpp"
#include "causal/causal_ordering.hpp"
#include "causal/error.hpp"
#include "causal/intervention.hpp"
#include "causal/io.hpp"
#include "causal/sem_bridge.hpp"
#include "causal/structure_matrix.hpp"
#include "causal/triangular.hpp"

namespace causal::cli {
namespace {

constexpr double kExactTolerance = 1e-12;

// Raised for flag values that parse but make no sense for the input.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("usage", message) {}
};

// Validation failure whose report has already been printed.
class ReportedFailure : public Error {
 public:
  ReportedFailure(const std::string& category, const std::string& message) : Error(category, message) {}
};

struct Options {
  std::string input;
  std::string second_input;
  std::string dot_path;
  std::string out_path;
  std::string node;
  std::string dist;
  std::string change_path;
  std::uint64_t seed = 0;
  std::uint64_t count = 10000;
};

/// Fixed-column text table: columns padded to their widest cell, two spaces
/// apart, no trailing padding.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : sep) + item;
  return out;
}

std::string variable_list(const std::vector<std::string>& names, const VariableSet& vars) {
  std::vector<std::string> out;
  for (VariableId v : vars) out.push_back(names[v.index]);
  return join(out, ",");
}

std::string equation_list(const std::vector<std::string>& labels, const EquationSet& eqs) {
  std::vector<std::string> out;
  for (EquationId e : eqs) out.push_back(labels[e.index]);
  return join(out, ",");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::vector<double> parse_dist(const std::string& csv) {
  std::vector<double> out;
  std::stringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError("--dist: '" + cell + "' is not a number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("--dist: empty distribution");
  return out;
}

void print_ordering(const CausalOrdering& ordering, std::ostream& out) {
  Table table({"order", "degree", "variables", "equations"});
  for (const auto& c : ordering.clusters) {
    table.add({std::to_string(c.order), std::to_string(c.degree), variable_list(ordering.variable_names, c.variables),
               equation_list(ordering.equation_labels, c.equations)});
  }
  table.print(out);
}

StructureMatrix structure_of(const io::Json& doc) {
  switch (io::detect_kind(doc)) {
    case io::DocumentKind::kSystem:
      return io::system_from_json(doc);
    case io::DocumentKind::kBbn:
      return sem_structure(bbn_to_sem(io::bbn_from_json(doc)));
    case io::DocumentKind::kSem:
      return sem_structure(io::sem_from_json(doc));
    case io::DocumentKind::kChange:
      break;
  }
  throw UsageError("expected a system, network or threshold system file");
}

Bbn network_of(const io::Json& doc) {
  if (io::detect_kind(doc) != io::DocumentKind::kBbn) throw UsageError("expected a network file");
  return io::bbn_from_json(doc);
}

std::string bbn_to_dot(const Bbn& bbn) {
  std::string out = "digraph bbn {\n";
  for (const auto& node : bbn.nodes()) out += "  " + dot_id(node.name) + ";\n";
  for (const auto& [from, to] : bbn.edges()) {
    out += "  " + dot_id(bbn.node(from.index).name) + " -> " + dot_id(bbn.node(to.index).name) + ";\n";
  }
  out += "}\n";
  return out;
}

// --- subcommands -----------------------------------------------------------

int cmd_check(const Options& opt, std::ostream& out) {
  const io::Json doc = io::read_json_file(opt.input);
  switch (io::detect_kind(doc)) {
    case io::DocumentKind::kSystem: {
      const auto matrix = io::system_from_json(doc);
      const auto report = check_system(matrix);
      out << "equations: " << matrix.size() << '\n';
      out << "self-contained: " << (report.self_contained ? "yes" : "no") << '\n';
      if (!report.self_contained) {
        if (!report.unused_variables.empty()) {
          out << "unused variables: " << variable_list(matrix.variable_names(), report.unused_variables) << '\n';
        }
        throw ReportedFailure("not_self_contained", describe(matrix, report));
      }
      const auto ordering = causal_ordering(matrix);
      out << "acyclic: " << (ordering.acyclic() ? "yes" : "no") << '\n';
      for (const auto& c : ordering.clusters) {
        if (c.degree > 1) out << "feedback cluster: {" << equation_list(matrix.equation_labels(), c.equations) << "}\n";
      }
      return 0;
    }
    case io::DocumentKind::kBbn: {
      const auto bbn = io::bbn_from_json(doc);
      const auto report = validate(bbn);
      out << "nodes: " << bbn.size() << '\n';
      out << "valid: " << (report.ok() ? "yes" : "no") << '\n';
      if (!report.ok()) {
        for (const auto& problem : report.problems) out << "problem: " << problem << '\n';
        throw ReportedFailure("invalid", report.summary(bbn.names()));
      }
      return 0;
    }
    case io::DocumentKind::kSem: {
      const auto sem = io::sem_from_json(doc);
      out << "equations: " << sem.size() << '\n' << "valid: yes\n";
      return 0;
    }
    case io::DocumentKind::kChange:
      break;
  }
  throw UsageError("check expects a system, network or threshold system file");
}

int cmd_order(const Options& opt, std::ostream& out) {
  const auto ordering = causal_ordering(structure_of(io::read_json_file(opt.input)));
  print_ordering(ordering, out);
  if (!opt.dot_path.empty()) io::write_text_file(opt.dot_path, ordering_to_dot(ordering));
  return 0;
}

int cmd_triangularize(const Options& opt, std::ostream& out) {
  const auto matrix = structure_of(io::read_json_file(opt.input));
  const auto tri = triangularize(matrix);
  std::vector<std::string> rows, cols;
  for (EquationId e : tri.row_perm) rows.push_back(matrix.equation_label(e));
  for (VariableId v : tri.col_perm) cols.push_back(matrix.variable_names()[v.index]);
  out << "rows: " << join(rows, " ") << '\n';
  out << "columns: " << join(cols, " ") << '\n';
  Table table({"equation", "determines"});
  for (EquationId e : tri.row_perm) {
    table.add({matrix.equation_label(e), matrix.variable_names()[tri.determined_by.at(e).index]});
  }
  table.print(out);
  return 0;
}

int cmd_to_sem(const Options& opt, std::ostream& out) {
  const auto sem = bbn_to_sem(network_of(io::read_json_file(opt.input)));
  emit(opt.out_path, io::dump(io::to_json(sem)), out);
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto bbn = network_of(io::read_json_file(opt.input));
  const auto sem = opt.second_input.empty() ? bbn_to_sem(bbn) : io::sem_from_json(io::read_json_file(opt.second_input));
  const double deviation = check_equivalence(bbn, sem);
  const bool roundtrip = roundtrip_check(bbn);
  out << "max deviation " << short_scientific(deviation) << "; roundtrip: " << (roundtrip ? "ok" : "failed") << '\n';
  if (deviation > kExactTolerance) {
    throw ReportedFailure("mismatch", "joint distributions differ by " + short_scientific(deviation));
  }
  if (!roundtrip) throw ReportedFailure("mismatch", "ordering of the threshold system does not recover the network");
  return 0;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  const io::Json doc = io::read_json_file(opt.input);
  std::vector<std::vector<std::string>> labels;
  std::optional<ThresholdEquationSystem> sem;
  if (io::detect_kind(doc) == io::DocumentKind::kBbn) {
    const auto bbn = io::bbn_from_json(doc);
    for (const auto& node : bbn.nodes()) labels.push_back(node.outcomes);
    sem = bbn_to_sem(bbn);
  } else if (io::detect_kind(doc) == io::DocumentKind::kSem) {
    sem = io::sem_from_json(doc);
    for (std::size_t v = 0; v < sem->size(); ++v) {
      labels.emplace_back();
      for (std::size_t o = 0; o < sem->outcome_count(v); ++o) labels.back().push_back(std::to_string(o));
    }
  } else {
    throw UsageError("sample expects a network or threshold system file");
  }
  const auto tallies = sample(*sem, opt.seed, opt.count);
  out << "draws: " << opt.count << "; seed: " << opt.seed << '\n';

  std::vector<std::string> header = sem->names();
  for (const char* column : {"count", "frequency", "probability"}) header.emplace_back(column);
  Table table(std::move(header));
  for_each_assignment(sem->outcome_counts(), [&](const Assignment& a) {
    std::vector<std::string> row;
    for (std::size_t v = 0; v < a.size(); ++v) row.push_back(labels[v][a[v]]);
    const auto it = tallies.tallies.find(a);
    row.push_back(std::to_string(it == tallies.tallies.end() ? 0 : it->second));
    row.push_back(fixed6(tallies.frequency(a)));
    row.push_back(fixed6(sem_joint(*sem, a)));
    table.add(std::move(row));
  });
  table.print(out);
  return 0;
}

int intervene_network(const Options& opt, const Bbn& bbn, const std::optional<StructuralChange>& change,
                      std::ostream& out) {
  Bbn after = bbn;
  if (change) {
    after = apply_change(bbn, *change);
  } else {
    if (opt.node.empty() || opt.dist.empty()) throw UsageError("intervene on a network needs --node and --dist");
    after = intervene_bbn(bbn, VariableId{bbn.index_of(opt.node)}, parse_dist(opt.dist));
  }
  const auto deviation = compare_marginals(bbn, after);
  Table table({"node", "max change"});
  for (std::size_t v = 0; v < bbn.size(); ++v) table.add({bbn.node(v).name, fixed6(deviation[v])});
  table.print(out);
  if (!opt.out_path.empty()) io::write_text_file(opt.out_path, io::dump(io::to_json(after)));
  return 0;
}

int intervene_system(const Options& opt, const StructureMatrix& matrix, const StructuralChange& change,
                     std::ostream& out) {
  const auto edited = apply_change(matrix, change);
  const auto after = causal_ordering(edited);
  VariableSet affected;
  if (change.kind == StructuralChange::Kind::kReplaceEquation) {
    affected = affected_variables(causal_ordering(matrix), EquationId{matrix.find_equation(change.target)->index});
    out << "replaced equation: " << change.target << '\n';
  } else {
    affected = affected_variables(after, EquationId{edited.size() - 1});
    out << "added variable: " << change.target << " (equation " << edited.equation_labels().back() << ")\n";
  }
  out << "affected: " << variable_list(edited.variable_names(), affected) << '\n';
  print_ordering(after, out);
  if (!opt.out_path.empty()) io::write_text_file(opt.out_path, io::dump(io::to_json(edited)));
  return 0;
}

int cmd_intervene(const Options& opt, std::ostream& out) {
  const io::Json doc = io::read_json_file(opt.input);
  std::optional<StructuralChange> change;
  if (!opt.change_path.empty()) {
    if (!opt.node.empty() || !opt.dist.empty()) throw UsageError("--change cannot be combined with --node or --dist");
    change = io::change_from_json(io::read_json_file(opt.change_path));
  }
  switch (io::detect_kind(doc)) {
    case io::DocumentKind::kBbn:
      return intervene_network(opt, io::bbn_from_json(doc), change, out);
    case io::DocumentKind::kSystem:
      if (!change) throw UsageError("intervene on a system needs --change");
      return intervene_system(opt, io::system_from_json(doc), *change, out);
    default:
      throw UsageError("intervene expects a system or network file");
  }
}

int cmd_graph(const Options& opt, std::ostream& out) {
  const io::Json doc = io::read_json_file(opt.input);
  const std::string dot = io::detect_kind(doc) == io::DocumentKind::kBbn ? bbn_to_dot(io::bbn_from_json(doc))
                                                                         : ordering_to_dot(causal_ordering(structure_of(doc)));
  emit(opt.out_path, dot, out);
  return 0;
}

bool is_input_error(const std::string& category) {
  return category == "io" || category == "parse" || category == "usage";
}

}  // namespace

std::string short_scientific(double value) {
  if (value == 0.0) return "0.0e0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", value);
  std::string text = buf;
  const auto e = text.find('e');
  std::string mantissa = text.substr(0, e);
  int exponent = std::stoi(text.substr(e + 1));
  return mantissa + "e" + std::to_string(exponent);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal ordering, threshold equations and interventions", "causalord"};
  app.require_subcommand(1);
  Options opt;

  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", opt.input, what)->required();
  };
  auto* check = app.add_subcommand("check", "Report self-containment and acyclicity, or validate a network");
  input(check, "System, network or threshold system file");
  auto* order = app.add_subcommand("order", "Print the causal ordering as a cluster table");
  input(order, "System, network or threshold system file");
  order->add_option("--dot", opt.dot_path, "Also write the ordering as DOT");
  auto* tri = app.add_subcommand("triangularize", "Permute a system to lower-triangular form");
  input(tri, "System file");
  auto* to_sem = app.add_subcommand("to-sem", "Convert a network to a threshold system");
  input(to_sem, "Network file");
  to_sem->add_option("--out", opt.out_path, "Output path (default stdout)");
  auto* verify = app.add_subcommand("verify", "Check distribution equivalence and round-trip recovery");
  input(verify, "Network file");
  verify->add_option("sem", opt.second_input, "Threshold system to compare (default: converted network)");
  auto* smp = app.add_subcommand("sample", "Tally sampled joint configurations");
  input(smp, "Network or threshold system file");
  smp->add_option("--seed", opt.seed, "Generator seed")->capture_default_str();
  smp->add_option("--count", opt.count, "Number of draws")->capture_default_str()->check(CLI::PositiveNumber);
  auto* inter = app.add_subcommand("intervene", "Apply an intervention and report what changed");
  input(inter, "System or network file");
  inter->add_option("--node", opt.node, "Network node to set");
  inter->add_option("--dist", opt.dist, "Comma-separated distribution for --node");
  inter->add_option("--change", opt.change_path, "Change file");
  inter->add_option("--out", opt.out_path, "Write the edited model here");
  auto* graph = app.add_subcommand("graph", "Emit DOT for a network or a causal ordering");
  input(graph, "System, network or threshold system file");
  graph->add_option("--out", opt.out_path, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error:usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (order->parsed()) return cmd_order(opt, out);
    if (tri->parsed()) return cmd_triangularize(opt, out);
    if (to_sem->parsed()) return cmd_to_sem(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (smp->parsed()) return cmd_sample(opt, out);
    if (inter->parsed()) return cmd_intervene(opt, out);
    return cmd_graph(opt, out);
  } catch (const Error& e) {
    err << "error:" << e.category() << ": " << e.what() << '\n';
    return is_input_error(e.category()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error:internal: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace causal::cli
