// Copyright 2026 The dpsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <charconv>
#include <string>
#include <system_error>

#include "dpsynth/error.h"
#include "dpsynth/spn.h"

namespace dpsynth {

namespace {

using nlohmann::json;

std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const json& j) {
  const std::string s = j.get<std::string>();
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("malformed SPN: bad number '" + s + "'");
  }
  return v;
}

json numbers_to_json(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number_text(v));
  return out;
}

std::vector<double> numbers_from_json(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(parse_number(x));
  return out;
}

json partition_to_json(const IndexPartition& p) {
  return {{"sizes", {p.left.size(), p.right.size()}}, {"left", p.left}};
}

IndexPartition partition_from_json(const json& j, Axis axis) {
  const auto sizes = j.at("sizes").get<std::vector<std::size_t>>();
  if (sizes.size() != 2) throw DataError("malformed SPN: partition sizes must have 2 entries");
  auto left = j.at("left").get<std::vector<std::size_t>>();
  if (left.size() != sizes[0]) throw DataError("malformed SPN: partition size mismatch");
  try {
    return IndexPartition::from_left(std::move(left), axis, sizes[0] + sizes[1]);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed SPN: ") + e.what());
  }
}

json node_to_json(const SpnTree& tree, std::size_t i) {
  const SpnNode& n = tree.nodes[i];
  json j;
  j["kind"] = std::string(to_string(n.kind()));
  j["rows"] = n.rows;
  j["epsilon"] = number_text(n.epsilon);
  j["attributes"] = n.attributes;
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, SumNode>) {
          j["partition"] = partition_to_json(payload.partition);
          j["weight_left"] = number_text(payload.weight_left);
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          j["partition"] = partition_to_json(payload.partition);
        } else if constexpr (std::is_same_v<T, LeafNode>) {
          j["counts"] = numbers_to_json(payload.histogram.counts);
        } else {
          j["keys"] = numbers_to_json(payload.fanout.keys);
          j["counts"] = numbers_to_json(payload.fanout.counts);
        }
      },
      n.payload);
  if (!n.is_leaf()) {
    j["children"] = {node_to_json(tree, n.left), node_to_json(tree, n.right)};
  }
  return j;
}

std::size_t node_from_json(const json& j, SpnTree& tree) {
  SpnNode n;
  const std::string kind = j.at("kind").get<std::string>();
  n.rows = j.at("rows").get<std::size_t>();
  n.epsilon = parse_number(j.at("epsilon"));
  n.attributes = j.at("attributes").get<std::vector<std::size_t>>();
  for (std::size_t a : n.attributes) {
    if (a >= tree.schema.attributes.size()) {
      throw DataError("malformed SPN: attribute index out of range");
    }
  }
  if (kind == "sum") {
    n.payload = SumNode{partition_from_json(j.at("partition"), Axis::kRows),
                        parse_number(j.at("weight_left"))};
  } else if (kind == "product") {
    n.payload = ProductNode{partition_from_json(j.at("partition"), Axis::kColumns)};
  } else if (kind == "leaf") {
    if (n.attributes.size() != 1) throw DataError("malformed SPN: leaf needs one attribute");
    n.payload = LeafNode{Histogram{tree.schema.attributes[n.attributes[0]],
                                   numbers_from_json(j.at("counts"))}};
  } else if (kind == "fanout_leaf") {
    if (n.attributes.size() != 1) throw DataError("malformed SPN: fanout leaf needs one attribute");
    n.payload = FanoutLeafNode{FanoutTable{tree.schema.attributes[n.attributes[0]],
                                           numbers_from_json(j.at("keys")),
                                           numbers_from_json(j.at("counts"))}};
  } else {
    throw DataError("malformed SPN: unknown node kind '" + kind + "'");
  }
  const bool internal = kind == "sum" || kind == "product";
  const std::size_t index = tree.add(std::move(n));
  if (internal) {
    const auto& children = j.at("children");
    if (!children.is_array() || children.size() != 2) {
      throw DataError("malformed SPN: internal node needs two children");
    }
    const std::size_t l = node_from_json(children[0], tree);
    const std::size_t r = node_from_json(children[1], tree);
    tree.nodes[index].left = l;
    tree.nodes[index].right = r;
  }
  return index;
}

}  // namespace

json spn_to_json(const SpnTree& tree) {
  json schema;
  schema["name"] = tree.schema.name;
  schema["primary_private"] = tree.schema.is_primary_private;
  schema["max_multiplicity"] = tree.schema.max_multiplicity;
  schema["attributes"] = json::array();
  for (const auto& a : tree.schema.attributes) schema["attributes"].push_back(attribute_to_json(a));
  json j;
  j["version"] = kSpnFormatVersion;
  j["table"] = tree.schema.name;
  j["beta"] = tree.beta;
  j["rows"] = tree.rows;
  j["schema"] = std::move(schema);
  j["root"] = tree.empty() ? json(nullptr) : node_to_json(tree, tree.root);
  return j;
}

SpnTree spn_from_json(const json& j) {
  SpnTree tree;
  try {
    if (!j.is_object()) throw DataError("malformed SPN: expected an object");
    const int version = j.at("version").get<int>();
    if (version != kSpnFormatVersion) {
      throw DataError("unsupported SPN format version " + std::to_string(version));
    }
    const json& s = j.at("schema");
    tree.schema.name = s.at("name").get<std::string>();
    tree.schema.is_primary_private = s.value("primary_private", false);
    tree.schema.max_multiplicity = s.value("max_multiplicity", 1);
    for (const auto& a : s.at("attributes")) {
      tree.schema.attributes.push_back(attribute_from_json(a));
    }
    if (j.at("table").get<std::string>() != tree.schema.name) {
      throw DataError("malformed SPN: table name differs from schema");
    }
    tree.beta = j.at("beta").get<std::size_t>();
    tree.rows = j.at("rows").get<std::size_t>();
    if (!j.at("root").is_null()) tree.root = node_from_json(j.at("root"), tree);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed SPN: ") + e.what());
  }
  tree.validate();
  return tree;
}

std::string serialize_spn(const SpnTree& tree) { return spn_to_json(tree).dump() + "\n"; }

SpnTree deserialize_spn(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed SPN payload: ") + e.what());
  }
  return spn_from_json(j);
}

}  // namespace dpsynth
