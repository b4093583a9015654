#include "effgraph/ceer/ceer.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace effgraph::ceer {

CeerEnumeration::CeerEnumeration(EnumerateFn enumerate, ColumnFn column)
    : enumerate_(std::make_shared<const EnumerateFn>(std::move(enumerate))),
      column_(column ? std::make_shared<const ColumnFn>(std::move(column)) : nullptr) {}

std::vector<Natural> CeerEnumeration::column(Natural x, Natural count) const {
  if (column_) return (*column_)(x, count);
  std::vector<Natural> out;
  out.reserve(count);
  for (Natural n = 0; n < count; ++n) out.push_back(enumerate(x, n));
  return out;
}

bool replay(const CeerEnumeration& e, const EquivalenceCertificate& cert) {
  Natural here = cert.x;
  for (const auto& step : cert.chain) {
    const Natural value = e.enumerate(step.column, step.index);
    if (step.column == here) {
      here = value;
    } else if (value == here) {
      here = step.column;
    } else {
      return false;
    }
  }
  return here == cert.y;
}

EquivalenceCertificate compose(const EquivalenceCertificate& first, const EquivalenceCertificate& second) {
  if (first.y != second.x) throw PreconditionViolation("certificates do not meet: first ends where second does not start");
  EquivalenceCertificate out{first.x, second.y, first.chain};
  out.chain.insert(out.chain.end(), second.chain.begin(), second.chain.end());
  return out;
}

Adjacency adjacent(const CeerEnumeration& e, Natural x, Natural y) {
  if (x == y) throw PreconditionViolation("adjacent(x, x): the graphing has no loops");
  const Natural hi = std::max(x, y);

  Adjacency out;
  FiniteWitnessGraph& g = out.graph;
  g.bound = hi;
  std::set<Natural> vertices;
  std::unordered_map<Natural, std::vector<Natural>> neighbours;
  for (Natural u = 0; u < hi; ++u) {
    vertices.insert(u);
    const std::vector<Natural> col = e.column(u, hi + 1);
    for (Natural n = 0; n < col.size(); ++n) {
      const Natural v = col[n];
      vertices.insert(v);
      if (v == u) continue;
      const auto key = std::minmax(u, v);
      if (g.edges.emplace(key, Provenance{u, n}).second) {
        neighbours[u].push_back(v);
        neighbours[v].push_back(u);
      }
    }
  }
  g.vertices.assign(vertices.begin(), vertices.end());

  // BFS from x; parent pointers give the certificate path.
  std::unordered_map<Natural, Natural> parent;
  std::deque<Natural> queue{x};
  parent.emplace(x, x);
  while (!queue.empty() && !parent.count(y)) {
    const Natural w = queue.front();
    queue.pop_front();
    auto it = neighbours.find(w);
    if (it == neighbours.end()) continue;
    for (Natural v : it->second) {
      if (parent.emplace(v, w).second) queue.push_back(v);
    }
  }
  if (!parent.count(y)) return out;

  out.adjacent = true;
  std::vector<Natural> path{y};
  while (path.back() != x) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  EquivalenceCertificate cert{x, y, {}};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    cert.chain.push_back(g.edges.at(std::minmax(path[i], path[i + 1])));
  }
  out.certificate = std::move(cert);
  return out;
}

namespace {

// Index of `target` in column `owner`, scanning indices < budget.
std::optional<Natural> find_in_column(const CeerEnumeration& e, Natural owner, Natural target, Natural budget) {
  Natural chunk = 64;
  Natural scanned = 0;
  while (scanned < budget) {
    const Natural count = std::min(budget, scanned + chunk);
    const std::vector<Natural> col = e.column(owner, count);
    for (Natural n = scanned; n < count; ++n) {
      if (col[n] == target) return n;
    }
    scanned = count;
    chunk *= 2;
  }
  return std::nullopt;
}

}  // namespace

Connection connect(const CeerEnumeration& e, Natural x, Natural y, Natural budget) {
  if (x == y) throw PreconditionViolation("connect(x, x): the graphing has no loops");
  Connection out;
  Natural owner = x;
  Natural target = y;
  std::optional<Natural> index = find_in_column(e, x, y, budget);
  if (!index) {
    index = find_in_column(e, y, x, budget);
    if (!index) {
      std::ostringstream msg;
      msg << "neither " << y << " in column " << x << " nor " << x << " in column " << y << " within "
          << budget << " indices";
      throw BudgetExhausted(msg.str());
    }
    owner = y;
    target = x;
    out.searched_from_y = true;
  }
  out.found_at = *index;
  out.bound = std::max({*index + 1, owner + 1, target + 1});

  // At most bound + 1 distinct values are <= bound, so one of the first
  // bound + 2 entries exceeds it.
  const std::vector<Natural> col = e.column(owner, out.bound + 2);
  const auto it = std::find_if(col.begin(), col.end(), [&](Natural v) { return v > out.bound; });
  if (it == col.end()) throw InternalContradiction("column repeats values: no element above N");
  out.z = *it;

  out.x_side = adjacent(e, x, out.z);
  out.y_side = adjacent(e, y, out.z);
  if (!out.x_side.adjacent || !out.y_side.adjacent) {
    std::ostringstream msg;
    msg << "midpoint " << out.z << " is not adjacent to both " << x << " and " << y;
    throw InternalContradiction(msg.str());
  }
  return out;
}

std::optional<EquivalenceCertificate> witness_equivalent(const CeerEnumeration& e, Natural x, Natural y,
                                                          Natural budget) {
  if (auto n = find_in_column(e, x, y, budget)) return EquivalenceCertificate{x, y, {{x, *n}}};
  return std::nullopt;
}

CeerEnumeration mod_k_ceer(Natural k) {
  if (k == 0) throw std::invalid_argument("mod-k ceer needs k >= 1");
  return CeerEnumeration([k](Natural x, Natural n) { return x + k * n; });
}

namespace {

class MergeSchedule {
 public:
  explicit MergeSchedule(std::vector<MergeEvent> events) : events_(std::move(events)) {
    for (std::size_t i = 1; i < events_.size(); ++i) {
      if (events_[i].stage < events_[i - 1].stage) {
        throw std::invalid_argument("merge schedule stages must be non-decreasing");
      }
    }
    // snapshots_[k]: column partition after the first k events.
    std::map<Natural, Natural> parent;
    auto find = [&](Natural c) {
      while (parent.count(c) && parent[c] != c) c = parent[c];
      return c;
    };
    snapshots_.push_back({});
    for (const auto& ev : events_) {
      parent.emplace(ev.column_a, ev.column_a);
      parent.emplace(ev.column_b, ev.column_b);
      const Natural ra = find(ev.column_a), rb = find(ev.column_b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      std::map<Natural, std::vector<Natural>> groups;
      for (const auto& [c, unused] : parent) groups[find(c)].push_back(c);
      std::map<Natural, std::vector<Natural>> by_column;
      for (const auto& [root, members] : groups) {
        for (Natural c : members) by_column[c] = members;
      }
      snapshots_.push_back(std::move(by_column));
    }
  }

  std::vector<Natural> group(Natural column, Natural stage) const {
    std::size_t applied = 0;
    while (applied < events_.size() && events_[applied].stage <= stage) ++applied;
    const auto& snap = snapshots_[applied];
    auto it = snap.find(column);
    if (it == snap.end()) return {column};
    return it->second;
  }

  std::vector<Natural> column(Natural x, Natural count) const {
    std::vector<Natural> out;
    if (count == 0) return out;
    out.reserve(count);
    out.push_back(x);
    const Natural home = CantorPairing::unpair(x).first;
    std::map<Natural, Natural> next;  // next unlisted index per column
    for (Natural stage = 0; out.size() < count; ++stage) {
      for (Natural j : group(home, stage)) {
        Natural& t = next[j];
        for (; t <= stage && out.size() < count; ++t) {
          const Natural v = CantorPairing::pair(j, t);
          if (v != x) out.push_back(v);
        }
      }
    }
    return out;
  }

 private:
  std::vector<MergeEvent> events_;
  std::vector<std::map<Natural, std::vector<Natural>>> snapshots_;
};

}  // namespace

CeerEnumeration merge_schedule_ceer(std::vector<MergeEvent> schedule) {
  auto sched = std::make_shared<const MergeSchedule>(std::move(schedule));
  return CeerEnumeration([sched](Natural x, Natural n) { return sched->column(x, n + 1).back(); },
                         [sched](Natural x, Natural count) { return sched->column(x, count); });
}

std::vector<MergeEvent> random_merge_schedule(std::uint64_t seed, Natural columns, std::size_t events,
                                              Natural max_stage) {
  if (columns < 2) throw std::invalid_argument("need at least two columns to merge");
  std::mt19937_64 rng(seed);
  std::vector<MergeEvent> out;
  for (std::size_t i = 0; i < events; ++i) {
    const Natural a = rng() % columns;
    Natural b = rng() % (columns - 1);
    if (b >= a) ++b;
    out.push_back({rng() % (max_stage + 1), a, b});
  }
  std::stable_sort(out.begin(), out.end(), [](const MergeEvent& l, const MergeEvent& r) { return l.stage < r.stage; });
  return out;
}

CeerEnumeration make_ceer(const GeneratorDescriptor& d) {
  if (d.kind == "mod-k") return mod_k_ceer(d.params.value("k", Natural{2}));
  if (d.kind == "merge-schedule") {
    if (!d.params.contains("schedule")) return merge_schedule_ceer(random_merge_schedule(d.seed));
    std::vector<MergeEvent> events;
    for (const auto& ev : d.params.at("schedule")) {
      if (!ev.is_array() || ev.size() != 3) throw std::invalid_argument("schedule entries are [stage, a, b]");
      events.push_back({ev[0].get<Natural>(), ev[1].get<Natural>(), ev[2].get<Natural>()});
    }
    return merge_schedule_ceer(std::move(events));
  }
  throw std::invalid_argument("unknown ceer generator '" + d.kind + "'");
}

std::optional<std::pair<Natural, std::pair<Natural, Natural>>> find_duplicate(const CeerEnumeration& e,
                                                                              Natural column_bound,
                                                                              Natural index_bound) {
  for (Natural c = 0; c < column_bound; ++c) {
    const auto col = e.column(c, index_bound);
    std::unordered_map<Natural, Natural> first;
    for (Natural n = 0; n < col.size(); ++n) {
      auto [it, fresh] = first.emplace(col[n], n);
      if (!fresh) return std::make_pair(c, std::make_pair(it->second, n));
    }
  }
  return std::nullopt;
}

std::vector<std::pair<Natural, Natural>> sample_certified_pairs(const CeerEnumeration& e, Natural bound,
                                                                Natural budget, std::size_t count,
                                                                std::uint64_t seed) {
  std::vector<std::unordered_set<Natural>> listed(bound);
  for (Natural x = 0; x < bound; ++x) {
    for (Natural v : e.column(x, budget)) {
      if (v < bound) listed[x].insert(v);
    }
  }
  std::vector<std::pair<Natural, Natural>> candidates;
  for (Natural x = 0; x < bound; ++x) {
    for (Natural y = 0; y < bound; ++y) {
      if (x != y && (listed[x].count(y) || listed[y].count(x))) candidates.emplace_back(x, y);
    }
  }
  std::vector<std::pair<Natural, Natural>> out;
  if (candidates.empty()) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(candidates[rng() % candidates.size()]);
  return out;
}

std::string to_dot(const FiniteWitnessGraph& g, Natural x, Natural y) {
  std::ostringstream out;
  out << "graph witness {\n";
  out << "  // columns z < " << g.bound << ", indices 0.." << g.bound << "\n";
  for (Natural v : g.vertices) {
    out << "  " << v;
    if (v == x || v == y) out << " [style=bold]";
    out << ";\n";
  }
  for (const auto& [key, prov] : g.edges) {
    out << "  " << key.first << " -- " << key.second << " [label=\"f(" << prov.column << "," << prov.index
        << ")\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace effgraph::ceer
