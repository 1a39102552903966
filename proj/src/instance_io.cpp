#include "treecomp/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "treecomp/errors.hpp"

namespace treecomp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

// {"<id>": "<letter>", ...} covering every node.
Tuple read_tuple(const json& j, const std::vector<NodeId>& ids,
                 const std::vector<std::vector<std::string>>& alphabets,
                 const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object of node letters");
  Tuple t(ids.size(), -1);
  for (const auto& [key, value] : j.items()) {
    NodeId id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(where, "key '" + key + "' is not a node id");
    }
    const auto pos = std::lower_bound(ids.begin(), ids.end(), id);
    if (pos == ids.end() || *pos != id) fail(where, "unknown node " + key);
    const auto i = static_cast<std::size_t>(pos - ids.begin());
    const std::string letter = as_string(value, where + "." + key);
    const auto& a = alphabets[i];
    const auto l = std::find(a.begin(), a.end(), letter);
    if (l == a.end()) fail(where + "." + key, "letter '" + letter + "' not in alphabet");
    t[i] = static_cast<int>(l - a.begin());
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0) fail(where, "no letter for node " + std::to_string(ids[i]));
  }
  return t;
}

Instance from_json(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  std::vector<std::pair<NodeId, std::vector<std::string>>> raw;
  const auto& nodes = as_array(field(doc, "nodes", "$"), "$.nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "$.nodes[" + std::to_string(i) + "]";
    const int id = as_int(field(nodes[i], "id", where), where + ".id");
    std::vector<std::string> alphabet;
    const auto& letters = as_array(field(nodes[i], "alphabet", where), where + ".alphabet");
    for (std::size_t k = 0; k < letters.size(); ++k) {
      alphabet.push_back(as_string(letters[k], where + ".alphabet[" + std::to_string(k) + "]"));
    }
    raw.emplace_back(id, std::move(alphabet));
  }
  std::vector<Edge> edges;
  const auto& edge_list = as_array(field(doc, "edges", "$"), "$.edges");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string where = "$.edges[" + std::to_string(i) + "]";
    if (!edge_list[i].is_array() || edge_list[i].size() != 2) fail(where, "expected [u, v]");
    edges.emplace_back(as_int(edge_list[i][0], where), as_int(edge_list[i][1], where));
  }
  const int root = as_int(field(doc, "root", "$"), "$.root");

  std::vector<NodeId> listed;
  for (const auto& [id, a] : raw) listed.push_back(id);
  RootedTree tree(listed, edges, root);

  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<NodeId> ids;
  std::vector<std::vector<std::string>> alphabets;
  for (auto& [id, a] : raw) {
    ids.push_back(id);
    alphabets.push_back(std::move(a));
  }

  Pmf pmf;
  const auto& entries = as_array(field(doc, "pmf", "$"), "$.pmf");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "$.pmf[" + std::to_string(i) + "]";
    Tuple x = read_tuple(field(entries[i], "x", where), ids, alphabets, where + ".x");
    Rational p;
    try {
      p = parse_probability(as_string(field(entries[i], "p", where), where + ".p"));
    } catch (const InputError& e) {
      fail(where + ".p", e.what());
    }
    if (!pmf.emplace(std::move(x), p).second) fail(where, "duplicate tuple");
  }
  SourceModel sources(ids, alphabets, std::move(pmf));

  std::vector<std::string> outputs;
  std::vector<std::pair<Tuple, std::string>> rows;
  const auto& f = as_array(field(doc, "f", "$"), "$.f");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string where = "$.f[" + std::to_string(i) + "]";
    Tuple x = read_tuple(field(f[i], "x", where), ids, alphabets, where + ".x");
    std::string value = as_string(field(f[i], "value", where), where + ".value");
    outputs.push_back(value);
    rows.emplace_back(std::move(x), std::move(value));
  }
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  std::map<Tuple, int> table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int v = static_cast<int>(
        std::lower_bound(outputs.begin(), outputs.end(), rows[i].second) - outputs.begin());
    const auto [it, fresh] = table.emplace(rows[i].first, v);
    if (!fresh && it->second != v) {
      fail("$.f[" + std::to_string(i) + "]", "conflicting value for a repeated tuple");
    }
  }
  return Instance(std::move(tree), std::move(sources),
                  FunctionTable(std::move(outputs), std::move(table)));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(doc);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json instance_to_json(const Instance& instance) {
  const auto& src = instance.sources;
  const auto& ids = src.node_ids();
  auto tuple_json = [&](const Tuple& x) {
    json t = json::object();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      t[std::to_string(ids[i])] = src.alphabet(ids[i])[static_cast<std::size_t>(x[i])];
    }
    return t;
  };
  json doc;
  doc["nodes"] = json::array();
  for (auto id : ids) doc["nodes"].push_back({{"id", id}, {"alphabet", src.alphabet(id)}});
  doc["edges"] = json::array();
  for (const auto& [u, v] : instance.tree.edges()) doc["edges"].push_back({u, v});
  doc["root"] = instance.tree.root();
  doc["pmf"] = json::array();
  for (const auto& [x, p] : src.pmf()) {
    doc["pmf"].push_back({{"x", tuple_json(x)}, {"p", to_string(p)}});
  }
  doc["f"] = json::array();
  for (const auto& [x, v] : instance.function.table()) {
    doc["f"].push_back(
        {{"x", tuple_json(x)}, {"value", instance.function.outputs()[static_cast<std::size_t>(v)]}});
  }
  return doc;
}

}  // namespace treecomp
