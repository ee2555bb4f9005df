// Copyright 2026 The Mechlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mechlab/io.h"

#include <fstream>
#include <sstream>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorKind::kInput, what);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    Bad(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

Json RatsToJson(const std::vector<Rat>& values) {
  Json out = Json::array();
  for (const Rat& r : values) out.push_back(r.ToString());
  return out;
}

Rat RatFromJson(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return Rat::Parse(j.get<std::string>());
  Bad("expected an integer or a rational string");
}

std::vector<Rat> RatsFromJson(const Json& j) {
  if (!j.is_array()) Bad("expected an array of rationals");
  std::vector<Rat> out;
  for (const Json& e : j) out.push_back(RatFromJson(e));
  return out;
}

template <typename T>
T Get(const Json& j, const char* key) {
  try {
    return Field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    Bad(std::string("field '") + key + "': " + e.what());
  }
}

std::string Hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

Json BundleToJson(const Bundle& b) {
  Json out = Json::array();
  for (int item : b.Items()) out.push_back(item);
  return out;
}

Bundle BundleFromJson(int m, const Json& j) {
  if (!j.is_array()) Bad("expected an item list");
  Bundle b(m);
  for (const Json& e : j) {
    if (!e.is_number_integer()) Bad("items must be integers");
    const int item = e.get<int>();
    if (item < 0 || item >= m) Bad("item " + std::to_string(item) + " out of range");
    b.Insert(item);
  }
  return b;
}

Json ValuationToJson(const Valuation& v) {
  Json out;
  out["m"] = v.m();
  if (const auto* t = v.table_values()) {
    out["kind"] = "table";
    out["payload"] = RatsToJson(*t);
  } else if (const auto* a = v.additive_values()) {
    out["kind"] = "additive";
    out["payload"] = RatsToJson(*a);
  } else if (const auto* c = v.count_values()) {
    out["kind"] = "counts";
    out["payload"] = RatsToJson(*c);
  } else {
    if (v.m() > 16) {
      throw Error(ErrorKind::kCapability,
                  std::string("cannot serialize a ") + v.Label() +
                      " valuation over more than 16 items");
    }
    out["kind"] = "table";
    out["source"] = v.Label();
    out["payload"] = RatsToJson(v.Materialize());
  }
  return out;
}

Valuation ValuationFromJson(const Json& j) {
  const std::string kind = Get<std::string>(j, "kind");
  const int m = Get<int>(j, "m");
  std::vector<Rat> payload = RatsFromJson(Field(j, "payload"));
  if (kind == "table") {
    if (m < 0 || m > kMaxTableItems ||
        payload.size() != (std::size_t{1} << m)) {
      Bad("table payload must have 2^m entries");
    }
    return Valuation::Table(m, std::move(payload));
  }
  if (kind == "additive") {
    if (static_cast<int>(payload.size()) != m) Bad("additive payload needs m entries");
    return Valuation::Additive(std::move(payload));
  }
  if (kind == "counts") {
    if (static_cast<int>(payload.size()) != m + 1) Bad("counts payload needs m + 1 entries");
    return Valuation::FromCounts(m, std::move(payload));
  }
  Bad("unknown valuation kind '" + kind + "'");
}

Json MatroidToJson(const RankProfileMatroid& matroid) {
  Json out;
  out["schema"] = "matroid";
  out["ground_size"] = matroid.family.ground_size;
  Json sets = Json::array();
  for (const Bundle& s : matroid.family.sets) sets.push_back(BundleToJson(s));
  out["sets"] = sets;
  out["full_rank"] = matroid.full_rank;
  out["b"] = matroid.b;
  out["d"] = matroid.d;
  return out;
}

RankProfileMatroid MatroidFromJson(const Json& j) {
  RankProfileMatroid m;
  m.family.ground_size = Get<int>(j, "ground_size");
  for (const Json& s : Field(j, "sets")) {
    m.family.sets.push_back(BundleFromJson(m.family.ground_size, s));
  }
  m.full_rank = Get<std::vector<int>>(j, "full_rank");
  for (int idx : m.full_rank) {
    if (idx < 0 || idx >= static_cast<int>(m.family.sets.size())) {
      Bad("full_rank index out of range");
    }
  }
  m.b = Get<int>(j, "b");
  m.d = Get<int>(j, "d");
  return m;
}

Json MechanismToJson(const Mechanism& mech) {
  const ProtocolTree& t = mech.tree;
  Json out;
  out["schema"] = "mechanism";
  out["name"] = mech.name;
  out["players"] = t.num_players();
  out["items"] = t.num_items();
  out["root"] = t.root();
  out["normalized"] = t.normalized;
  out["no_negative_transfers"] = t.no_negative_transfers;
  Json nodes = Json::array();
  for (NodeId u = 0; u < t.size(); ++u) {
    const Node& n = t.node(u);
    Json node;
    if (n.is_leaf()) {
      Json alloc = Json::array();
      for (const Bundle& b : n.outcome->allocation) alloc.push_back(BundleToJson(b));
      node["allocation"] = alloc;
      node["payments"] = RatsToJson(n.outcome->payments);
    } else {
      node["speakers"] = n.speakers;
      node["alphabet"] = n.alphabet;
      node["children"] = n.children;
    }
    nodes.push_back(node);
  }
  out["nodes"] = nodes;
  // Behaviors as sparse [node, message] pairs.
  Json strategies = Json::array();
  for (const auto& per_player : mech.strategies.strategies) {
    Json list = Json::array();
    for (const Behavior& b : per_player) {
      Json pairs = Json::array();
      for (std::size_t u = 0; u < b.size(); ++u) {
        if (b[u] >= 0) pairs.push_back({static_cast<int>(u), b[u]});
      }
      list.push_back(pairs);
    }
    strategies.push_back(list);
  }
  out["strategies"] = strategies;
  Json domains = Json::array();
  for (const auto& dom : mech.domains) {
    Json list = Json::array();
    for (const Valuation& v : dom) list.push_back(ValuationToJson(v));
    domains.push_back(list);
  }
  out["domains"] = domains;
  return out;
}

Mechanism MechanismFromJson(const Json& j) {
  Mechanism mech;
  mech.name = j.value("name", std::string("mechanism"));
  const int n = Get<int>(j, "players");
  const int m = Get<int>(j, "items");
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(n, m);
  const Json& nodes = Field(j, "nodes");
  if (!nodes.is_array() || nodes.size() > static_cast<std::size_t>(kMaxTreeNodes)) {
    Bad("nodes must be an array within the node cap");
  }
  // Two passes: create nodes, then wire children.
  std::vector<std::vector<NodeId>> children(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const Json& node = nodes[u];
    if (node.contains("allocation")) {
      Outcome o;
      for (const Json& b : Field(node, "allocation")) o.allocation.push_back(BundleFromJson(m, b));
      o.payments = RatsFromJson(Field(node, "payments"));
      t.AddLeaf(std::move(o));
    } else {
      t.AddInternal(Get<std::vector<int>>(node, "speakers"),
                    Get<std::vector<int>>(node, "alphabet"));
      children[u] = Get<std::vector<NodeId>>(node, "children");
    }
  }
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const NodeId id = static_cast<NodeId>(u);
    if (t.node(id).is_leaf()) continue;
    if (static_cast<int>(children[u].size()) != t.NumProfiles(id)) {
      Bad("node " + std::to_string(u) + " has the wrong number of children");
    }
    for (int p = 0; p < t.NumProfiles(id); ++p) {
      const NodeId c = children[u][p];
      if (c < 0 || c >= t.size()) Bad("child id out of range at node " + std::to_string(u));
      t.SetChild(id, t.ProfileAt(id, p), c);
    }
  }
  t.set_root(Get<int>(j, "root"));
  t.normalized = j.value("normalized", false);
  t.no_negative_transfers = j.value("no_negative_transfers", false);
  t.Validate();
  for (const Json& list : Field(j, "strategies")) {
    std::vector<Behavior> per_player;
    for (const Json& pairs : list) {
      Behavior b(t.size(), -1);
      for (const Json& pr : pairs) {
        const int u = pr.at(0).get<int>();
        if (u < 0 || u >= t.size()) Bad("strategy names a missing node");
        b[u] = pr.at(1).get<int>();
      }
      per_player.push_back(std::move(b));
    }
    mech.strategies.strategies.push_back(std::move(per_player));
  }
  for (const Json& list : Field(j, "domains")) {
    std::vector<Valuation> dom;
    for (const Json& v : list) dom.push_back(ValuationFromJson(v));
    mech.domains.push_back(std::move(dom));
  }
  if (static_cast<int>(mech.domains.size()) != n ||
      static_cast<int>(mech.strategies.strategies.size()) != n) {
    Bad("one domain and one strategy list per player required");
  }
  for (int i = 0; i < n; ++i) {
    if (mech.domains[i].size() != mech.strategies.strategies[i].size()) {
      Bad("player " + std::to_string(i) + " needs one behavior per valuation");
    }
  }
  return mech;
}

Json InstanceToJson(const AuctionInstance& inst) {
  Json out;
  out["schema"] = "instance";
  out["generator"] = inst.generator;
  out["seed"] = inst.seed;
  Json params = Json::object();
  for (const auto& [k, v] : inst.params) params[k] = v;
  out["params"] = params;
  out["notes"] = inst.notes;
  out["m"] = inst.m;
  out["bidders"] = inst.num_bidders();
  out["group_of"] = inst.group_of;
  out["special_bidder"] = inst.special_bidder;
  Json specials = Json::array();
  for (const Bundle& b : inst.special_sets) specials.push_back(BundleToJson(b));
  out["special_sets"] = specials;
  out["shared"] = BundleToJson(inst.shared);
  Json interests = Json::array();
  for (const auto& sets : inst.interests) {
    Json list = Json::array();
    for (const Bundle& b : sets) list.push_back(BundleToJson(b));
    interests.push_back(list);
  }
  out["interests"] = interests;
  return out;
}

AuctionInstance RegenerateInstance(const std::string& generator,
                                   const Json& params, std::uint64_t seed) {
  auto int_param = [&](const char* key) -> std::optional<int> {
    if (!params.contains(key)) return std::nullopt;
    const Json& v = params.at(key);
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) return std::stoi(v.get<std::string>());
    Bad(std::string("parameter '") + key + "' must be an integer");
  };
  if (generator == "hard-general") {
    HardGeneralParams p;
    if (auto v = int_param("m")) p.m = *v;
    if (auto v = int_param("t")) p.t = *v;
    if (auto v = int_param("group_size")) p.group_size = *v;
    if (params.contains("epsilon")) p.epsilon = RatFromJson(params.at("epsilon"));
    // A resolved group size equal to m is the default, not an override.
    if (p.group_size == p.m) p.group_size = 0;
    return GenHardGeneral(p, seed);
  }
  if (generator == "hard-matroid") {
    HardMatroidParams p;
    if (auto v = int_param("m")) p.m = *v;
    p.group_size = int_param("group_size");
    p.block_size = int_param("block_size");
    p.k = int_param("k");
    p.b = int_param("b");
    if (auto v = int_param("samples")) p.samples = *v;
    if (auto v = int_param("retry_cap")) p.retry_cap = *v;
    return GenHardMatroid(p, seed);
  }
  Bad("unknown generator '" + generator + "'");
}

AuctionInstance InstanceFromJson(const Json& j) {
  const std::string generator = Get<std::string>(j, "generator");
  const std::uint64_t seed = Get<std::uint64_t>(j, "seed");
  const Json& params = Field(j, "params");
  if (!params.is_object()) Bad("params must be an object");
  AuctionInstance inst = RegenerateInstance(generator, params, seed);
  // Everything stored must match the regenerated structure.
  Json again = InstanceToJson(inst);
  for (const char* key : {"m", "bidders", "group_of", "special_bidder",
                          "special_sets", "shared", "interests"}) {
    if (j.contains(key) && j.at(key) != again.at(key)) {
      Bad(std::string("stored '") + key +
          "' differs from the regenerated instance (seed " + Hex(seed) + ")");
    }
  }
  return inst;
}

Json ParseJson(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t at = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0,
                                                 text.size());
    int line = 1, col = 1;
    for (std::size_t k = 0; k < at; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": JSON parse error";
    throw Error(ErrorKind::kInput, os.str());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseJson(ss.str(), path);
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Bad("cannot write " + path);
  out << text;
  if (!out) Bad("failed writing " + path);
}

}  // namespace mechlab
