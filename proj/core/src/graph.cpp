#include "bideval/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bideval {

namespace {

[[noreturn]] void malformed(std::string const &item, std::string const &what)
{
  throw ValidationError({Issue{"graph-inconsistent", "", item, what}});
}

// Disjoint-set over vertex positions within one item.
class Components
{
public:
  explicit Components(std::size_t n)
    : parent_(n)
  {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x)
    {
      parent_[x] = parent_[parent_[x]];
      x          = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

UndirectedEdge UndirectedEdge::make(Vertex x, Vertex y)
{
  if (y.label() < x.label())
  {
    std::swap(x, y);
  }
  return {std::move(x), std::move(y)};
}

TenderGraph build_graph(Tender const &tender, Classifications const &classifications,
                        ItemPrecedence const &precedence)
{
  TenderGraph g;
  for (auto const &bid : tender.bids)
  {
    for (auto const &item : tender.items)
    {
      g.vertices.insert(Vertex{bid.bidder, item.name});
    }
  }

  for (auto const &item : tender.items)
  {
    auto it = classifications.find(item.name);
    if (it == classifications.end())
    {
      throw ValidationError({Issue{"missing-classification", "", item.name, "no classification for item"}});
    }
    auto const &classes = it->second.classes;
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
      for (std::size_t i = 0; i < classes[c].size(); ++i)
      {
        for (std::size_t j = i + 1; j < classes[c].size(); ++j)
        {
          g.e2.insert(UndirectedEdge::make({classes[c][i], item.name}, {classes[c][j], item.name}));
        }
      }
      if (c + 1 < classes.size())
      {
        for (auto const &u : classes[c])
        {
          for (auto const &v : classes[c + 1])
          {
            g.e1.insert(DirectedEdge{{u, item.name}, {v, item.name}});
          }
        }
      }
    }
  }

  for (std::size_t t = 0; t + 1 < precedence.tiers.size(); ++t)
  {
    for (auto const &bid : tender.bids)
    {
      for (auto const &from : precedence.tiers[t])
      {
        for (auto const &to : precedence.tiers[t + 1])
        {
          g.e3.insert(DirectedEdge{{bid.bidder, from}, {bid.bidder, to}});
        }
      }
    }
  }
  return g;
}

Classifications recover_classifications(TenderGraph const &graph)
{
  std::map<std::string, std::vector<std::string>> members;  // item -> bidders (sorted by set order)
  for (auto const &v : graph.vertices)
  {
    members[v.item].push_back(v.bidder);
  }
  for (auto &[item, bidders] : members)
  {
    std::sort(bidders.begin(), bidders.end());
  }

  auto position = [&](Vertex const &v) -> std::size_t {
    auto it = members.find(v.item);
    if (it == members.end())
    {
      malformed(v.item, "edge endpoint " + v.label() + " is not a vertex");
    }
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), v.bidder);
    if (pos == it->second.end() || *pos != v.bidder)
    {
      malformed(v.item, "edge endpoint " + v.label() + " is not a vertex");
    }
    return static_cast<std::size_t>(pos - it->second.begin());
  };

  std::map<std::string, Components> components;
  for (auto const &[item, bidders] : members)
  {
    components.emplace(item, Components(bidders.size()));
  }
  for (auto const &e : graph.e2)
  {
    if (e.a.item != e.b.item)
    {
      malformed(e.a.item, "equivalence edge joins different items");
    }
    components.at(e.a.item).unite(position(e.a), position(e.b));
  }

  Classifications out;
  for (auto const &[item, bidders] : members)
  {
    auto &comp = components.at(item);

    // Class id per vertex, numbered by first appearance.
    std::map<std::size_t, std::size_t> id_of_root;
    std::vector<std::size_t>           class_id(bidders.size());
    std::vector<std::vector<std::string>> groups;
    for (std::size_t i = 0; i < bidders.size(); ++i)
    {
      auto [it, fresh] = id_of_root.emplace(comp.find(i), groups.size());
      if (fresh)
      {
        groups.emplace_back();
      }
      class_id[i] = it->second;
      groups[it->second].push_back(bidders[i]);
    }

    // Every pair inside a class must be joined directly (classes are cliques).
    std::size_t expected_e2 = 0;
    for (auto const &g : groups)
    {
      expected_e2 += g.size() * (g.size() - 1) / 2;
    }
    std::size_t actual_e2 = 0;
    for (auto const &e : graph.e2)
    {
      actual_e2 += e.a.item == item ? 1 : 0;
    }
    if (actual_e2 != expected_e2)
    {
      malformed(item, "equivalence edges do not form complete classes");
    }

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> class_edges;
    for (auto const &e : graph.e1)
    {
      if (e.from.item != item && e.to.item != item)
      {
        continue;
      }
      if (e.from.item != e.to.item)
      {
        malformed(item, "order edge joins different items");
      }
      auto const a = class_id[position(e.from)];
      auto const b = class_id[position(e.to)];
      if (a == b)
      {
        malformed(item, "order edge inside an equivalence class");
      }
      ++class_edges[{a, b}];
    }

    std::vector<int>         indegree(groups.size(), 0);
    std::vector<std::size_t> successor(groups.size(), groups.size());
    for (auto const &[pair, count] : class_edges)
    {
      auto const [a, b] = pair;
      if (count != groups[a].size() * groups[b].size())
      {
        malformed(item, "order edges between two classes are not complete");
      }
      if (successor[a] != groups.size())
      {
        malformed(item, "class has more than one successor");
      }
      successor[a] = b;
      ++indegree[b];
    }

    std::vector<std::size_t> heads;
    for (std::size_t c = 0; c < groups.size(); ++c)
    {
      if (indegree[c] > 1)
      {
        malformed(item, "class has more than one predecessor");
      }
      if (indegree[c] == 0)
      {
        heads.push_back(c);
      }
    }
    if (heads.size() != 1)
    {
      malformed(item, "order edges do not form a single chain of classes");
    }

    ItemClassification cls{item, {}};
    for (std::size_t c = heads.front(); c != groups.size(); c = successor[c])
    {
      if (cls.classes.size() == groups.size())
      {
        malformed(item, "order edges contain a cycle");
      }
      cls.classes.push_back(groups[c]);
    }
    if (cls.classes.size() != groups.size())
    {
      malformed(item, "order edges do not reach every class");
    }
    out.emplace(item, std::move(cls));
  }
  return out;
}

ItemPrecedence recover_precedence(TenderGraph const &graph)
{
  std::set<std::string> items;
  std::set<std::string> bidders;
  for (auto const &v : graph.vertices)
  {
    items.insert(v.item);
    bidders.insert(v.bidder);
  }

  std::map<std::string, std::set<std::string>> next;
  std::map<std::string, int>                   indegree;
  for (auto const &item : items)
  {
    indegree[item] = 0;
  }
  for (auto const &e : graph.e3)
  {
    if (e.from.bidder != e.to.bidder || e.from.item == e.to.item)
    {
      malformed(e.from.item, "item-chain edge must link one bidder across two items");
    }
    if (!items.count(e.from.item) || !items.count(e.to.item))
    {
      malformed(e.from.item, "item-chain edge endpoint is not a vertex");
    }
    if (next[e.from.item].insert(e.to.item).second)
    {
      ++indegree[e.to.item];
    }
  }

  ItemPrecedence           precedence;
  std::vector<std::string> frontier;
  for (auto const &[item, degree] : indegree)
  {
    if (degree == 0)
    {
      frontier.push_back(item);
    }
  }
  std::size_t placed = 0;
  while (!frontier.empty())
  {
    precedence.tiers.push_back(frontier);
    placed += frontier.size();
    std::set<std::string> following;
    for (auto const &item : frontier)
    {
      for (auto const &to : next[item])
      {
        if (--indegree[to] == 0)
        {
          following.insert(to);
        }
      }
    }
    frontier.assign(following.begin(), following.end());
  }
  if (placed != items.size())
  {
    malformed("", "item-chain edges contain a cycle");
  }

  // The layering must reproduce e3 exactly: complete links between
  // consecutive tiers for every bidder, nothing else.
  std::set<DirectedEdge> expected;
  for (std::size_t t = 0; t + 1 < precedence.tiers.size(); ++t)
  {
    for (auto const &bidder : bidders)
    {
      for (auto const &from : precedence.tiers[t])
      {
        for (auto const &to : precedence.tiers[t + 1])
        {
          expected.insert(DirectedEdge{{bidder, from}, {bidder, to}});
        }
      }
    }
  }
  if (expected != graph.e3)
  {
    malformed("", "item-chain edges do not describe a tiered precedence");
  }
  return precedence;
}

OrderedSequence extract_order(TenderGraph const &graph, Tender const &tender, TieBreakPolicy const &policy)
{
  std::set<Vertex> expected;
  for (auto const &bid : tender.bids)
  {
    for (auto const &item : tender.items)
    {
      expected.insert(Vertex{bid.bidder, item.name});
    }
  }
  if (expected != graph.vertices)
  {
    throw ValidationError({Issue{"graph-mismatch", "", "", "graph vertices do not match the tender's bidders and items"}});
  }
  return merge_lexicographic(tender, recover_classifications(graph), recover_precedence(graph), policy);
}

std::string export_edges(TenderGraph const &graph)
{
  std::vector<std::string> lines;
  lines.reserve(graph.vertices.size() + graph.e1.size() + graph.e2.size() + graph.e3.size());
  for (auto const &v : graph.vertices)
  {
    lines.push_back("V " + v.label());
  }
  for (auto const &e : graph.e1)
  {
    lines.push_back("E1 " + e.from.label() + " -> " + e.to.label());
  }
  for (auto const &e : graph.e2)
  {
    lines.push_back("E2 " + e.a.label() + " -- " + e.b.label());
  }
  for (auto const &e : graph.e3)
  {
    lines.push_back("E3 " + e.from.label() + " -> " + e.to.label());
  }
  std::sort(lines.begin(), lines.end());

  std::string out;
  for (auto const &line : lines)
  {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace bideval
