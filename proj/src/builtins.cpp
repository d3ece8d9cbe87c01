#include "plonkalog/workspace.hpp"

namespace plonkalog {

namespace {

// Weak Kleene family: u is the infectious value. The K4 / S4 / M4 / SK tables
// follow the published figures; WK additionally carries the material
// conditional (classical on {0,1}, infectious at u) used by the CL fixtures.
const char* const kBuiltinText = R"(
signature CLSIG { not/1, and/2, or/2, to/2 }
signature DMSIG { not/1, and/2, or/2 }

algebra TWO {
  elements: 0, 1
  op not/1: 0->1, 1->0
  op and/2: (0,_)->0, (1,0)->0, (1,1)->1
  op or/2:  (0,0)->0, (0,1)->1, (1,_)->1
  op to/2:  (0,_)->1, (1,0)->0, (1,1)->1
}

algebra ONE {
  elements: 1
  op not/1: 1->1
  op and/2: (1,1)->1
  op or/2:  (1,1)->1
  op to/2:  (1,1)->1
}

algebra WK {
  elements: 0, u, 1
  op not/1: 0->1, u->u, 1->0
  op and/2: (0,0)->0, (0,u)->u, (0,1)->0, (u,_)->u, (1,0)->0, (1,u)->u, (1,1)->1
  op or/2:  (0,0)->0, (0,u)->u, (0,1)->1, (u,_)->u, (1,0)->1, (1,u)->u, (1,1)->1
  op to/2:  (0,0)->1, (0,u)->u, (0,1)->1, (u,_)->u, (1,0)->0, (1,u)->u, (1,1)->1
}

algebra WK3 {
  elements: 0, u, 1
  op not/1: 0->1, u->u, 1->0
  op and/2: (0,0)->0, (0,u)->u, (0,1)->0, (u,_)->u, (1,0)->0, (1,u)->u, (1,1)->1
  op or/2:  (0,0)->0, (0,u)->u, (0,1)->1, (u,_)->u, (1,0)->1, (1,u)->u, (1,1)->1
}

algebra ONE3 {
  elements: 1
  op not/1: 1->1
  op and/2: (1,1)->1
  op or/2:  (1,1)->1
}

algebra K4 {
  elements: 0, u, n, 1
  op not/1: 0->1, u->u, n->n, 1->0
  op and/2: (0,0)->0, (0,u)->u, (0,n)->n, (0,1)->0,
            (u,0)->u, (u,u)->u, (u,n)->n, (u,1)->u,
            (n,_)->n,
            (1,0)->0, (1,u)->u, (1,n)->n, (1,1)->1
  op or/2:  (0,0)->0, (0,u)->u, (0,n)->n, (0,1)->1,
            (u,0)->u, (u,u)->u, (u,n)->n, (u,1)->u,
            (n,_)->n,
            (1,0)->1, (1,u)->u, (1,n)->n, (1,1)->1
}

algebra S4 {
  elements: 0, u, m, 1
  op not/1: 0->1, u->u, m->m, 1->0
  op and/2: (0,0)->0, (0,u)->0, (0,m)->m, (0,1)->0,
            (u,0)->0, (u,u)->u, (u,m)->m, (u,1)->u,
            (m,_)->m,
            (1,0)->0, (1,u)->u, (1,m)->m, (1,1)->1
  op or/2:  (0,0)->0, (0,u)->u, (0,m)->m, (0,1)->1,
            (u,0)->u, (u,u)->u, (u,m)->m, (u,1)->1,
            (m,_)->m,
            (1,0)->1, (1,u)->1, (1,m)->m, (1,1)->1
}

algebra SK {
  elements: 0, u, 1
  op not/1: 0->1, u->u, 1->0
  op and/2: (0,_)->0, (u,0)->0, (u,u)->u, (u,1)->u, (1,0)->0, (1,u)->u, (1,1)->1
  op or/2:  (0,0)->0, (0,u)->u, (0,1)->1, (u,0)->u, (u,u)->u, (u,1)->1, (1,_)->1
}

algebra M4 {
  elements: 0, b, n, 1
  op not/1: 0->1, b->b, n->n, 1->0
  op and/2: (0,_)->0,
            (b,0)->0, (b,b)->b, (b,n)->0, (b,1)->b,
            (n,0)->0, (n,b)->0, (n,n)->n, (n,1)->n,
            (1,0)->0, (1,b)->b, (1,n)->n, (1,1)->1
  op or/2:  (0,0)->0, (0,b)->b, (0,n)->n, (0,1)->1,
            (b,0)->b, (b,b)->b, (b,n)->1, (b,1)->1,
            (n,0)->n, (n,b)->1, (n,n)->n, (n,1)->1,
            (1,_)->1
}

matrix B3   { algebra: WK;  filter: 1 }
matrix CL2  { algebra: TWO; filter: 1 }
matrix TRIV { algebra: ONE; filter: 1 }
matrix PWK  { algebra: WK3; filter: 1, u }
matrix KW4  { algebra: K4;  filter: 1, u }
matrix LPM  { algebra: SK;  filter: 1, u }
matrix SFDE { algebra: S4;  filter: 1, u }
matrix BD   { algebra: M4;  filter: 1, b }

antitheorem SIGMA {
  signature: CLSIG
  formulas: x, not x
}

calculus CL {
  signature: CLSIG
  axiom A1: p -> p
  axiom A2: p -> (q -> p)
  axiom A3: (p -> (q -> r)) -> ((p -> q) -> (p -> r))
  axiom A4: (not p -> not q) -> (q -> p)
  rule MP: p, p -> q |- q
}

calculus B {
  signature: DMSIG
  rule B1:  p /\ q |- p
  rule B2:  p /\ q |- q
  rule B3:  p, q |- p /\ q
  rule B4:  p |- p \/ q
  rule B5:  p \/ q |- q \/ p
  rule B6:  p \/ p |- p
  rule B7:  p \/ (q \/ r) |- (p \/ q) \/ r
  rule B8:  p \/ (q /\ r) |- (p \/ q) /\ (p \/ r)
  rule B9:  (p \/ q) /\ (p \/ r) |- p \/ (q /\ r)
  rule B10: p \/ q |- (not not p) \/ q
  rule B11: (not not p) \/ q |- p \/ q
  rule B12: (not (p \/ q)) \/ r |- (not p /\ not q) \/ r
  rule B13: (not p /\ not q) \/ r |- (not (p \/ q)) \/ r
  rule B14: (not (p /\ q)) \/ r |- (not p \/ not q) \/ r
  rule B15: (not p \/ not q) \/ r |- (not (p /\ q)) \/ r
}

calculus LP {
  signature: DMSIG
  axiom LP1: p \/ not p
  rule B1:  p /\ q |- p
  rule B2:  p /\ q |- q
  rule B3:  p, q |- p /\ q
  rule B4:  p |- p \/ q
  rule B5:  p \/ q |- q \/ p
  rule B6:  p \/ p |- p
  rule B7:  p \/ (q \/ r) |- (p \/ q) \/ r
  rule B8:  p \/ (q /\ r) |- (p \/ q) /\ (p \/ r)
  rule B9:  (p \/ q) /\ (p \/ r) |- p \/ (q /\ r)
  rule B10: p \/ q |- (not not p) \/ q
  rule B11: (not not p) \/ q |- p \/ q
  rule B12: (not (p \/ q)) \/ r |- (not p /\ not q) \/ r
  rule B13: (not p /\ not q) \/ r |- (not (p \/ q)) \/ r
  rule B14: (not (p /\ q)) \/ r |- (not p \/ not q) \/ r
  rule B15: (not p \/ not q) \/ r |- (not (p /\ q)) \/ r
}

# A sound finite presentation fragment of paraconsistent weak Kleene, used by
# the fiber-model checks; every rule is valid in the PWK matrix.
calculus PWKRULES {
  signature: DMSIG
  axiom PWK1: p \/ not p
  rule PWK2: p |- p \/ q
  rule PWK3: p, q |- p /\ q
  rule PWK4: p \/ p |- p
  rule PWK5: p \/ q |- q \/ p
  rule PWK6: p \/ (q \/ r) |- (p \/ q) \/ r
  rule PWK7: (not not p) \/ q |- p \/ q
  rule PWK8: (not (p \/ q)) \/ r |- (not p /\ not q) \/ r
  rule PWK9: p /\ q |- q /\ p
}

companion-check b3-vs-clr {
  candidate: B3
  base: CL2
  antitheorem: SIGMA
  reading: semantic
  vars: p, q, r
  depth: 2
  max-premises: 2
}

companion-check kw4-vs-pwkr {
  candidate: KW4
  base: PWK
  antitheorem: none
  vars: p, q, r
  depth: 2
  max-premises: 2
}

companion-check sfde-vs-lpr {
  candidate: SFDE
  base: LPM
  antitheorem: none
  vars: p, q, r
  depth: 2
  max-premises: 2
}
)";

}  // namespace

const Workspace& builtins() {
  static const Workspace ws = [] {
    Workspace w;
    load_text(w, kBuiltinText, "<builtins>");
    return w;
  }();
  return ws;
}

BuiltinValue builtin(const std::string& name) {
  const Workspace& ws = builtins();
  if (auto it = ws.algebras.find(name); it != ws.algebras.end())
    return it->second;
  if (auto it = ws.matrices.find(name); it != ws.matrices.end())
    return it->second;
  if (auto it = ws.calculi.find(name); it != ws.calculi.end())
    return it->second;
  throw Error("unknown builtin '" + name + "'");
}

}  // namespace plonkalog
