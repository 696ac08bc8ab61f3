#include "causal/io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace causal::io {
namespace {

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!keys.count(item.key())) throw ParseError(where + ": unknown key '" + item.key() + "'");
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError(where + ": expected a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) throw ParseError(where + ": expected a list of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

std::size_t index_in(const std::vector<std::string>& names, const std::string& name, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw ParseError(where + ": unknown variable '" + name + "'");
}

}  // namespace

DocumentKind detect_kind(const Json& doc) {
  if (doc.is_object()) {
    if (doc.contains("variables")) return DocumentKind::kSystem;
    if (doc.contains("nodes")) return DocumentKind::kBbn;
    if (doc.contains("equations")) return DocumentKind::kSem;
    if (doc.contains("kind")) return DocumentKind::kChange;
  }
  throw ParseError("unrecognized document: expected a system, network, threshold system, or change");
}

StructureMatrix system_from_json(const Json& doc) {
  require_object(doc, "system");
  reject_unknown_keys(doc, {"variables", "equations"}, "system");
  const auto names = string_list(field(doc, "variables", "system"), "system.variables");
  const Json& equations = field(doc, "equations", "system");
  if (!equations.is_array()) throw ParseError("system.equations: expected a list");

  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const std::string where = "system.equations[" + std::to_string(i) + "]";
    const Json& eq = equations[i];
    require_object(eq, where);
    reject_unknown_keys(eq, {"label", "vars"}, where);
    labels.push_back(string_field(eq, "label", where));
    std::vector<std::size_t> row;
    for (const auto& v : string_list(field(eq, "vars", where), where + ".vars")) row.push_back(index_in(names, v, where));
    rows.push_back(std::move(row));
  }
  try {
    return StructureMatrix(names, std::move(labels), rows);
  } catch (const InvalidModelError& e) {
    throw ParseError(std::string("system: ") + e.what());
  }
}

Json to_json(const StructureMatrix& matrix) {
  Json equations = Json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Json vars = Json::array();
    for (std::size_t j : matrix.row(i)) vars.push_back(matrix.variable_names()[j]);
    equations.push_back(Json{{"label", matrix.equation_labels()[i]}, {"vars", std::move(vars)}});
  }
  return Json{{"variables", matrix.variable_names()}, {"equations", std::move(equations)}};
}

Bbn bbn_from_json(const Json& doc) {
  require_object(doc, "network");
  reject_unknown_keys(doc, {"nodes"}, "network");
  const Json& nodes = field(doc, "nodes", "network");
  if (!nodes.is_array()) throw ParseError("network.nodes: expected a list");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "network.nodes[" + std::to_string(i) + "]";
    require_object(nodes[i], where);
    names.push_back(string_field(nodes[i], "name", where));
  }

  std::vector<BbnNode> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Json& j = nodes[i];
    const std::string where = "node '" + names[i] + "'";
    reject_unknown_keys(j, {"name", "outcomes", "parents", "cpt"}, where);
    BbnNode node;
    node.name = names[i];
    node.outcomes = string_list(field(j, "outcomes", where), where + " outcomes");
    for (const auto& p : string_list(field(j, "parents", where), where + " parents")) {
      node.parents.push_back(index_in(names, p, where + " parents"));
    }
    const Json& cpt = field(j, "cpt", where);
    if (!cpt.is_array()) throw ParseError(where + ": cpt must be a list of rows");
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      node.cpt.push_back(number_list(cpt[r], where + " cpt row " + std::to_string(r)));
    }
    out.push_back(std::move(node));
  }
  return Bbn(std::move(out));
}

Json to_json(const Bbn& bbn) {
  Json nodes = Json::array();
  for (const auto& node : bbn.nodes()) {
    Json parents = Json::array();
    for (std::size_t p : node.parents) parents.push_back(bbn.node(p).name);
    nodes.push_back(Json{{"name", node.name}, {"outcomes", node.outcomes}, {"parents", std::move(parents)},
                         {"cpt", node.cpt}});
  }
  return Json{{"nodes", std::move(nodes)}};
}

ThresholdEquationSystem sem_from_json(const Json& doc) {
  require_object(doc, "threshold system");
  reject_unknown_keys(doc, {"equations"}, "threshold system");
  const Json& equations = field(doc, "equations", "threshold system");
  if (!equations.is_array()) throw ParseError("threshold system.equations: expected a list");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const std::string where = "threshold system.equations[" + std::to_string(i) + "]";
    require_object(equations[i], where);
    names.push_back(string_field(equations[i], "target", where));
  }
  std::vector<ThresholdEquation> out;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const Json& j = equations[i];
    const std::string where = "equation for '" + names[i] + "'";
    reject_unknown_keys(j, {"target", "parents", "thresholds"}, where);
    ThresholdEquation eq;
    eq.target = i;
    for (const auto& p : string_list(field(j, "parents", where), where + " parents")) {
      eq.parents.push_back(index_in(names, p, where + " parents"));
    }
    const Json& rows = field(j, "thresholds", where);
    if (!rows.is_array()) throw ParseError(where + ": thresholds must be a list of rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      eq.thresholds.push_back(number_list(rows[r], where + " thresholds row " + std::to_string(r)));
    }
    out.push_back(std::move(eq));
  }
  try {
    return ThresholdEquationSystem(std::move(names), std::move(out));
  } catch (const InvalidModelError& e) {
    throw ParseError(std::string("threshold system: ") + e.what());
  }
}

Json to_json(const ThresholdEquationSystem& sem) {
  Json equations = Json::array();
  for (std::size_t v = 0; v < sem.size(); ++v) {
    const auto& eq = sem.equation(v);
    Json parents = Json::array();
    for (std::size_t p : eq.parents) parents.push_back(sem.names()[p]);
    equations.push_back(
        Json{{"target", sem.names()[v]}, {"parents", std::move(parents)}, {"thresholds", eq.thresholds}});
  }
  return Json{{"equations", std::move(equations)}};
}

StructuralChange change_from_json(const Json& doc) {
  require_object(doc, "change");
  reject_unknown_keys(doc, {"kind", "target", "vars", "dist"}, "change");
  StructuralChange change;
  change.kind = parse_change_kind(string_field(doc, "kind", "change"));
  change.target = string_field(doc, "target", "change");
  if (change.kind == StructuralChange::Kind::kSetBbnNode) {
    if (doc.contains("vars")) throw ParseError("change: set_bbn_node takes 'dist', not 'vars'");
    change.dist = number_list(field(doc, "dist", "change"), "change.dist");
  } else {
    if (doc.contains("dist")) throw ParseError("change: " + to_string(change.kind) + " takes 'vars', not 'dist'");
    change.vars = string_list(field(doc, "vars", "change"), "change.vars");
  }
  return change;
}

Json to_json(const StructuralChange& change) {
  Json j{{"kind", to_string(change.kind)}, {"target", change.target}};
  if (change.kind == StructuralChange::Kind::kSetBbnNode) {
    j["dist"] = change.dist;
  } else {
    j["vars"] = change.vars;
  }
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace causal::io
