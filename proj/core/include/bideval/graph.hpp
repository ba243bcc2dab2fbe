#pragma once

#include "bideval/ordering.hpp"

#include <compare>
#include <set>
#include <string>

namespace bideval {

/// One bidder's response to one item, as a graph vertex.
struct Vertex
{
  std::string bidder;
  std::string item;

  std::string label() const { return bidder + "@" + item; }

  auto operator<=>(Vertex const &) const = default;
};

struct DirectedEdge
{
  Vertex from;
  Vertex to;

  auto operator<=>(DirectedEdge const &) const = default;
};

/// Stored with `a` < `b` (by label) so each unordered pair appears once.
struct UndirectedEdge
{
  Vertex a;
  Vertex b;

  static UndirectedEdge make(Vertex x, Vertex y);

  auto operator<=>(UndirectedEdge const &) const = default;
};

/// Vertices are (bidder, item) pairs.
///  - e1: u -> v when u's class immediately precedes v's class on one item,
///    expanded over every member pair of the two classes.
///  - e2: u -- v when u and v share a class on one item.
///  - e3: a bidder's vertex on a tier-t item -> its vertex on each tier-(t+1)
///    item, following the item precedence.
struct TenderGraph
{
  std::set<Vertex>         vertices;
  std::set<DirectedEdge>   e1;
  std::set<UndirectedEdge> e2;
  std::set<DirectedEdge>   e3;

  bool operator==(TenderGraph const &) const = default;
};

TenderGraph build_graph(Tender const &tender, Classifications const &classifications,
                        ItemPrecedence const &precedence);

/// Item classes rebuilt from e1/e2 alone.
///
/// e2 components are the classes; the condensation of e1 over them must be a
/// single path, which gives their order. Throws ValidationError when the
/// edges do not describe such a chain.
Classifications recover_classifications(TenderGraph const &graph);

/// Item tiers rebuilt from e3 alone (items without incoming e3 edges form the
/// first tier, and so on).
ItemPrecedence recover_precedence(TenderGraph const &graph);

/// Reads the classes and tiers back out of the graph and produces the same
/// ordering as order_bids. Throws ValidationError if the graph's bidders or
/// items differ from the tender's.
OrderedSequence extract_order(TenderGraph const &graph, Tender const &tender, TieBreakPolicy const &policy);

/// Line-oriented dump, one line per vertex or edge, sorted bytewise:
///   V  R1@A1
///   E1 R2@A1 -> R4@A1
///   E2 R2@A1 -- R3@A1
///   E3 R1@A1 -> R1@A3
std::string export_edges(TenderGraph const &graph);

}  // namespace bideval
