#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/oplaws.hpp"

namespace rmcalc {

enum class NodeKind {
  Identity,
  Atomic,
  Wigner,
  Wishart,
  Mobius,
  Inv,
  Scale,
  Shift,
  Square,
  BlockDiag,
  Corner,
  AddAtomicWishart,
  MulWishart,
  InfoPlusNoise,
  FreeAdd,
  FreeMul,
  Compress,
  WishartCov,
  TransposeSwap,
};

inline constexpr std::array kAllNodeKinds = {
    NodeKind::Identity,  NodeKind::Atomic,     NodeKind::Wigner,           NodeKind::Wishart,
    NodeKind::Mobius,    NodeKind::Inv,        NodeKind::Scale,            NodeKind::Shift,
    NodeKind::Square,    NodeKind::BlockDiag,  NodeKind::Corner,           NodeKind::AddAtomicWishart,
    NodeKind::MulWishart, NodeKind::InfoPlusNoise, NodeKind::FreeAdd,      NodeKind::FreeMul,
    NodeKind::Compress,  NodeKind::WishartCov, NodeKind::TransposeSwap,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Scalars per kind, in order:
//   Wishart c | Mobius p q r s | Scale, Shift alpha | BlockDiag c | Corner c alpha
//   AddAtomicWishart c (masses in atoms) | MulWishart c | InfoPlusNoise c s
//   Compress c | WishartCov c | TransposeSwap c
struct Expr {
  NodeKind kind = NodeKind::Identity;
  std::vector<ExprPtr> children;
  std::vector<Rational> scalars;
  AtomicSpec atoms;
  int line = 0, column = 0;  // source position, 0 when built in code
};

std::string_view node_name(NodeKind k);

ExprPtr make_expr(NodeKind k, std::vector<ExprPtr> children = {}, std::vector<Rational> scalars = {},
                  AtomicSpec atoms = {});

// Throws ParseError with a 1-based line and column.
ExprPtr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Lmz of the limiting eigenvalue distribution.
BiPoly evaluate(const Expr& e);

}  // namespace rmcalc
