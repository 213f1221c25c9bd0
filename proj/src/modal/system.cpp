#include <algorithm>
#include <set>

#include "fa/modal.hpp"
#include "json.hpp"

namespace fa {

PotentialistSystem::PotentialistSystem(std::string name, std::vector<std::string> labels,
                                       std::vector<StructurePtr> worlds, std::vector<boost::dynamic_bitset<>> access,
                                       StructurePtr limit)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      worlds_(std::move(worlds)),
      access_(std::move(access)),
      limit_(std::move(limit)) {
  const std::size_t n = worlds_.size();
  if (labels_.size() != n || access_.size() != n) throw std::invalid_argument("system: inconsistent world count");
  for (const auto& row : access_)
    if (row.size() != n) throw std::invalid_argument("system: access row of wrong length");
  for (const auto& w : worlds_)
    if (!w) throw std::invalid_argument("system: null world");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != n) throw std::invalid_argument("system: duplicate world labels");
}

std::optional<std::size_t> PotentialistSystem::find(const std::string& label) const {
  const std::string& wanted = label == "empty" ? std::string("{}") : label;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == wanted) return i;
  return std::nullopt;
}

std::size_t PotentialistSystem::resolve(const std::string& text) const {
  if (auto w = find(text)) return *w;
  if (text.size() > 1 && text[0] == '#' && std::all_of(text.begin() + 1, text.end(), ::isdigit)) {
    const std::size_t i = std::stoul(text.substr(1));
    if (i < size()) return i;
  }
  throw std::out_of_range("unknown world '" + text + "' in " + name_);
}

PotentialistSystem aristotelian_system(const Numeral& height) {
  if (height < 1) throw std::invalid_argument("aristotelian system needs height >= 1");
  const std::size_t h = to_size(height);
  std::vector<std::string> labels;
  std::vector<StructurePtr> worlds;
  std::vector<boost::dynamic_bitset<>> access;
  for (std::size_t n = 1; n <= h; ++n) {
    labels.push_back(std::to_string(n));
    worlds.push_back(make_truncation(Numeral(n)).shared());
    boost::dynamic_bitset<> row(h);
    for (std::size_t m = n; m <= h; ++m) row.set(m - 1);
    access.push_back(std::move(row));
  }
  StructurePtr limit = worlds.back();
  return PotentialistSystem("aristotelian(" + height.str() + ")", std::move(labels), std::move(worlds),
                            std::move(access), std::move(limit));
}

PotentialistSystem arbitrary_set_system(const Numeral& height, std::size_t world_budget) {
  if (height < 0) throw std::invalid_argument("arbitrary-set system needs height >= 0");
  if (height >= 62 || (std::size_t(1) << (height.convert_to<std::size_t>() + 1)) > world_budget)
    throw std::length_error("arbitrary-set system of height " + height.str() + " has 2^" + Numeral(height + 1).str() +
                            " worlds, over the budget of " + std::to_string(world_budget));
  const std::size_t h = height.convert_to<std::size_t>();
  const std::size_t count = std::size_t(1) << (h + 1);
  std::vector<std::string> labels;
  std::vector<StructurePtr> worlds;
  std::vector<boost::dynamic_bitset<>> access;
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Numeral> xs;
    for (std::size_t i = 0; i <= h; ++i)
      if (mask >> i & 1) xs.emplace_back(i);
    worlds.push_back(make_subset_world(std::move(xs)));
    labels.push_back(worlds.back()->describe());
    boost::dynamic_bitset<> row(count);
    for (std::size_t other = 0; other < count; ++other)
      if ((mask & ~other) == 0) row.set(other);
    access.push_back(std::move(row));
  }
  // N|0 does not exist; the limit over {0} is the one-point world.
  StructurePtr limit = h == 0 ? make_subset_world({0}) : make_truncation(height).shared();
  return PotentialistSystem("arbitrary-set(" + height.str() + ")", std::move(labels), std::move(worlds),
                            std::move(access), std::move(limit));
}

PotentialistSystem fork_system() {
  std::vector<StructurePtr> worlds{make_subset_world({0, 1}), make_subset_world({0, 1, 2}),
                                   make_subset_world({0, 1, 3})};
  std::vector<std::string> labels{"root", "left", "right"};
  std::vector<boost::dynamic_bitset<>> access(3, boost::dynamic_bitset<>(3));
  access[0].set();
  access[1].set(1);
  access[2].set(2);
  return PotentialistSystem("fork", std::move(labels), std::move(worlds), std::move(access));
}

namespace {

// u's individuals, constants and graphs reappear in v.
std::optional<std::string> extension_problem(const Structure& u, const Structure& v) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!v.contains(u.element(i))) return "individual " + u.element(i).str() + " is missing";
  if (u.zero() && u.zero() != v.zero()) return std::string("constant 0 differs");
  if (u.one() && u.one() != v.one()) return std::string("constant 1 differs");
  for (std::size_t i = 0; i < n; ++i) {
    const Numeral a = u.element(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Numeral b = u.element(j);
      if (auto c = u.plus(a, b); c && v.plus(a, b) != c) return a.str() + " + " + b.str() + " changes";
      if (auto c = u.times(a, b); c && v.times(a, b) != c) return a.str() + " * " + b.str() + " changes";
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> convergence_problems(const PotentialistSystem& sys) {
  std::vector<std::string> out;
  const StructurePtr& limit = sys.limit();
  if (!limit) return out;
  for (std::size_t u = 0; u < sys.size(); ++u)
    if (auto p = extension_problem(sys.world(u), *limit))
      out.push_back("world " + sys.label(u) + " is not a substructure of the limit: " + *p);
  for (std::size_t u = 0; u < sys.size(); ++u) {
    for (std::size_t i = 0; i < limit->size(); ++i) {
      const Numeral x = limit->element(i);
      bool absorbed = false;
      const auto& succ = sys.successors(u);
      for (auto v = succ.find_first(); v != succ.npos && !absorbed; v = succ.find_next(v))
        absorbed = sys.world(v).contains(x);
      if (!absorbed) out.push_back("world " + sys.label(u) + " cannot be extended to contain " + x.str());
    }
  }
  return out;
}

std::vector<std::string> validate(const PotentialistSystem& sys) {
  std::vector<std::string> out;
  const std::size_t n = sys.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (!sys.accessible(u, u)) out.push_back("access is not reflexive at " + sys.label(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (!sys.accessible(u, v)) continue;
      for (std::size_t w = 0; w < n; ++w)
        if (sys.accessible(v, w) && !sys.accessible(u, w))
          out.push_back("access is not transitive: " + sys.label(u) + " -> " + sys.label(v) + " -> " + sys.label(w));
      if (u != v)
        if (auto p = extension_problem(sys.world(u), sys.world(v)))
          out.push_back("world " + sys.label(v) + " does not extend " + sys.label(u) + ": " + *p);
    }
  }
  auto more = convergence_problems(sys);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

namespace {

using nlohmann::json;

Numeral json_numeral(const json& j) {
  if (j.is_number_unsigned()) return Numeral(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Numeral(j.get<std::int64_t>());
  if (j.is_string()) return parse_numeral(j.get<std::string>());
  throw std::invalid_argument("expected a nonnegative integer, got " + j.dump());
}

StructurePtr json_structure(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected a world object, got " + j.dump());
  if (j.contains("truncation")) return make_truncation(json_numeral(j.at("truncation"))).shared();
  if (j.contains("individuals")) {
    std::vector<Numeral> xs;
    for (const auto& x : j.at("individuals")) xs.push_back(json_numeral(x));
    return make_subset_world(std::move(xs));
  }
  throw std::invalid_argument("world needs \"truncation\" or \"individuals\": " + j.dump());
}

}  // namespace

PotentialistSystem load_system_json(const std::string& text, bool require_constants) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("system file is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("worlds") || !doc.at("worlds").is_array())
    throw std::invalid_argument("system file needs a \"worlds\" array");

  std::vector<std::string> labels;
  std::vector<StructurePtr> worlds;
  for (const auto& w : doc.at("worlds")) {
    StructurePtr s = json_structure(w);
    labels.push_back(w.contains("label") ? w.at("label").get<std::string>() : s->describe());
    if (require_constants && (!s->zero() || !s->one()))
      throw std::invalid_argument("world " + labels.back() + " lacks the constant 0 or 1");
    worlds.push_back(std::move(s));
  }
  const std::size_t n = worlds.size();
  std::vector<boost::dynamic_bitset<>> access(n, boost::dynamic_bitset<>(n));
  auto index_of = [&](const json& label) {
    const std::string l = label.get<std::string>();
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == l) return i;
    throw std::invalid_argument("access names unknown world '" + l + "'");
  };
  if (doc.contains("access")) {
    for (const auto& pair : doc.at("access")) {
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("access entries are [from, to] pairs");
      access[index_of(pair[0])].set(index_of(pair[1]));
    }
  }
  StructurePtr limit = doc.contains("limit") ? json_structure(doc.at("limit")) : nullptr;
  std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : std::string("system");

  PotentialistSystem sys(std::move(name), std::move(labels), std::move(worlds), std::move(access), std::move(limit));
  auto problems = validate(sys);
  if (!problems.empty()) {
    std::string msg = "invalid system:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  return sys;
}

FrameReport frame_properties(const PotentialistSystem& sys) {
  const std::size_t n = sys.size();
  FrameReport r;
  r.reflexive = r.transitive = true;
  bool directed = true, linear = true;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& su = sys.successors(u);
    r.reflexive = r.reflexive && su.test(u);
    for (auto v = su.find_first(); v != su.npos; v = su.find_next(v)) {
      if (!sys.successors(v).is_subset_of(su)) r.transitive = false;
      for (auto w = su.find_next(v); w != su.npos; w = su.find_next(w)) {
        if (!sys.accessible(v, w) && !sys.accessible(w, v)) linear = false;
        if (!sys.successors(v).intersects(sys.successors(w))) directed = false;
      }
    }
  }
  const bool preorder = r.reflexive && r.transitive;
  r.directed = preorder && directed;
  r.linear = preorder && linear;
  r.classification = r.linear ? "S4.3" : r.directed ? "S4.2" : preorder ? "S4" : "none";
  return r;
}

}  // namespace fa
