//! Hash-consed DAG normal form of second-order polynomials.
//!
//! Every `Λ(·)` subterm becomes a node labelled by the first-order polynomial
//! of its argument, written over `N` and the nodes of the maximal `Λ`
//! subterms inside it. Nodes are interned by label, so syntactically
//! equivalent subterms share a node and equivalence of whole polynomials is
//! equality of their root labels.
//!
//! Node `0` is the leaf `1` and node `1` the leaf `N`; variable `Var(u)` in a
//! label stands for node `u`.

use crate::monotone::MonotoneFn;
use crate::{Error, Monotone, Natural, Poly1, Poly2, Result, Tail, Var};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_traits::{One, ToPrimitive, Zero};

pub type NodeId = usize;

pub const LEAF_ONE: NodeId = 0;
pub const LEAF_N: NodeId = 1;

pub fn node_var(u: NodeId) -> Var {
    Var(u as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf1,
    LeafN,
    Lam { label: Poly1, children: Vec<NodeId> },
}

/// Root of one input polynomial: its label with the outer `Λ` omitted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootExpr {
    pub label: Poly1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalDag {
    nodes: Vec<Node>,
    heights: Vec<u32>,
    index: BTreeMap<Poly1, NodeId>,
}

impl Default for NormalDag {
    fn default() -> Self {
        Self::new()
    }
}

/// Display name of a label variable.
pub fn var_name(v: Var) -> String {
    match v.0 as usize {
        LEAF_N => "N".into(),
        u => format!("Y{u}"),
    }
}

impl NormalDag {
    pub fn new() -> Self {
        NormalDag { nodes: alloc::vec![Node::Leaf1, Node::LeafN], heights: alloc::vec![0, 0], index: BTreeMap::new() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, u: NodeId) -> Result<&Node> {
        self.nodes.get(u).ok_or(Error::UnknownNode(u))
    }

    /// Ids of the `Λ` nodes.
    pub fn lam_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        2..self.nodes.len()
    }

    /// Longest path down to a leaf, which is the `Λ`-nesting depth of the
    /// node's unfolding.
    pub fn height(&self, u: NodeId) -> Result<u32> {
        self.heights.get(u).copied().ok_or(Error::UnknownNode(u))
    }

    /// Adds a polynomial and returns its root.
    pub fn insert(&mut self, p: &Poly2) -> RootExpr {
        let mut memo = BTreeMap::new();
        RootExpr { label: self.flatten(p, &mut memo) }
    }

    fn flatten(&mut self, p: &Poly2, memo: &mut BTreeMap<*const Poly2, Poly1>) -> Poly1 {
        let key = p as *const Poly2;
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let out = match p {
            Poly2::One => Poly1::one(),
            Poly2::N => Poly1::var(node_var(LEAF_N)),
            Poly2::Add(a, b) => &self.flatten(a, memo) + &self.flatten(b, memo),
            Poly2::Mul(a, b) => &self.flatten(a, memo) * &self.flatten(b, memo),
            Poly2::Lam(a) => {
                let label = self.flatten(a, memo);
                Poly1::var(node_var(self.intern(label)))
            }
        };
        memo.insert(key, out.clone());
        out
    }

    fn intern(&mut self, label: Poly1) -> NodeId {
        if let Some(u) = self.index.get(&label) {
            return *u;
        }
        let mut children: Vec<NodeId> = label.variables().into_iter().map(|v| v.0 as NodeId).collect();
        if !label.constant_term().is_zero() {
            children.insert(0, LEAF_ONE);
        }
        let height = 1 + children.iter().map(|c| self.heights[*c]).max().unwrap_or(0);
        let u = self.nodes.len();
        self.nodes.push(Node::Lam { label: label.clone(), children });
        self.heights.push(height);
        self.index.insert(label, u);
        u
    }

    /// Unfolds a node into a second-order polynomial.
    pub fn to_poly2(&self, u: NodeId) -> Result<Poly2> {
        let mut memo = BTreeMap::new();
        self.unfold(u, &mut memo).map(|p| (*p).clone())
    }

    /// Unfolds a root into a second-order polynomial.
    pub fn root_to_poly2(&self, root: &RootExpr) -> Result<Poly2> {
        let mut memo = BTreeMap::new();
        self.label_to_poly2(&root.label, &mut memo)
    }

    fn unfold(&self, u: NodeId, memo: &mut BTreeMap<NodeId, Arc<Poly2>>) -> Result<Arc<Poly2>> {
        if let Some(p) = memo.get(&u) {
            return Ok(p.clone());
        }
        let p = match self.node(u)? {
            Node::Leaf1 => Poly2::One,
            Node::LeafN => Poly2::N,
            Node::Lam { label, .. } => Poly2::lam(self.label_to_poly2(label, memo)?),
        };
        let p = Arc::new(p);
        memo.insert(u, p.clone());
        Ok(p)
    }

    fn label_to_poly2(&self, label: &Poly1, memo: &mut BTreeMap<NodeId, Arc<Poly2>>) -> Result<Poly2> {
        let mut sum: Option<Poly2> = None;
        for (m, c) in label.sorted_terms() {
            let mut prod: Option<Poly2> = None;
            let push = |prod: &mut Option<Poly2>, f: Poly2| {
                *prod = Some(match prod.take() {
                    None => f,
                    Some(acc) => Poly2::mul(acc, f),
                });
            };
            if !c.is_one() || m.is_one() {
                let k = c.to_u64().ok_or_else(|| Error::ThresholdTooLarge(format!("coefficient {c}")))?;
                push(&mut prod, Poly2::literal(k));
            }
            for (v, e) in m.factors() {
                let f = self.unfold(v.0 as NodeId, memo)?;
                push(&mut prod, Poly2::pow(&f, e));
            }
            let prod = prod.expect("nonempty monomial");
            sum = Some(match sum {
                None => prod,
                Some(acc) => Poly2::add(acc, prod),
            });
        }
        sum.ok_or(Error::VerificationFailed)
    }

    /// Values of all nodes under `(n, ℓ)`.
    pub fn evaluate(&self, n: &Natural, ell: &dyn Monotone) -> Vec<Natural> {
        let mut values: Vec<Natural> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Leaf1 => Natural::one(),
                Node::LeafN => n.clone(),
                Node::Lam { label, .. } => ell.apply(&eval_label(label, &values)),
            };
            values.push(v);
        }
        values
    }
}

pub fn eval_label(label: &Poly1, values: &[Natural]) -> Natural {
    label.eval_with(|v| values.get(v.0 as usize).cloned()).expect("children precede parents")
}

/// Builds the normal form of one polynomial.
pub fn nf_build(p: &Poly2) -> (NormalDag, RootExpr) {
    let mut dag = NormalDag::new();
    let root = dag.insert(p);
    (dag, root)
}

/// Builds one shared normal form for several polynomials.
pub fn nf_merge<'a>(ps: impl IntoIterator<Item = &'a Poly2>) -> (NormalDag, Vec<RootExpr>) {
    let mut dag = NormalDag::new();
    let roots = ps.into_iter().map(|p| dag.insert(p)).collect();
    (dag, roots)
}

/// Syntactic equivalence, which coincides with semantic equality.
pub fn nf_eq(p: &Poly2, q: &Poly2) -> bool {
    let (_, roots) = nf_merge([p, q]);
    roots[0] == roots[1]
}

fn pairwise_distinct(polys: &[Poly1]) -> Option<(usize, usize)> {
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if polys[i] == polys[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// `d·K(K−1)/2` for a family of `K` polynomials of total degree at most `d`.
fn sz_bound(polys: &[Poly1]) -> u64 {
    let k = polys.len() as u64;
    let d = polys.iter().filter_map(Poly1::total_degree).max().unwrap_or(0) as u64;
    d * k * k.saturating_sub(1) / 2
}

/// Lexicographically first grid point at which the polynomials take pairwise
/// distinct values.
///
/// Requires pairwise distinct polynomials and every grid larger than
/// `d·K(K−1)/2`; then every partial choice keeping the residual polynomials
/// distinct extends to a full one, so a greedy scan finds the first point.
pub fn sz_separate(polys: &[Poly1], grids: &BTreeMap<Var, Vec<Natural>>) -> Result<BTreeMap<Var, Natural>> {
    if let Some((i, j)) = pairwise_distinct(polys) {
        return Err(Error::DuplicatePolynomials(i, j));
    }
    let needed = sz_bound(polys);
    let vars: BTreeSet<Var> = polys.iter().flat_map(Poly1::variables).collect();
    for v in &vars {
        let grid = grids.get(v).ok_or(Error::MissingVariable(*v))?;
        let size = grid.iter().collect::<BTreeSet<_>>().len();
        if size as u64 <= needed {
            return Err(Error::GridTooSmall { var: *v, size, needed });
        }
    }
    sz_search(polys, grids).ok_or(Error::VerificationFailed)
}

/// Backtracking search for the lexicographically first separating point,
/// without any size precondition.
pub fn sz_search(polys: &[Poly1], grids: &BTreeMap<Var, Vec<Natural>>) -> Option<BTreeMap<Var, Natural>> {
    if pairwise_distinct(polys).is_some() {
        return None;
    }
    let order: Vec<(Var, Vec<Natural>)> = grids
        .iter()
        .map(|(v, g)| {
            let mut g = g.clone();
            g.sort();
            g.dedup();
            (*v, g)
        })
        .collect();
    let vars: BTreeSet<Var> = polys.iter().flat_map(Poly1::variables).collect();
    if vars.iter().any(|v| !grids.contains_key(v)) {
        return None;
    }
    let mut point = BTreeMap::new();
    search(polys.to_vec(), &order, &mut point).then_some(point)
}

fn search(residual: Vec<Poly1>, order: &[(Var, Vec<Natural>)], point: &mut BTreeMap<Var, Natural>) -> bool {
    let Some(((v, grid), rest)) = order.split_first() else {
        return true;
    };
    for x in grid {
        let next: Vec<Poly1> = residual.iter().map(|p| p.substitute(*v, x)).collect();
        if pairwise_distinct(&next).is_none() {
            point.insert(*v, x.clone());
            if search(next, rest, point) {
                return true;
            }
            point.remove(v);
        }
    }
    false
}

/// Values chosen for one height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTrace {
    pub height: u32,
    /// The level's values lie in `[lo, hi]`.
    pub lo: Natural,
    pub hi: Natural,
    /// `(node, argument, value)` in increasing argument order.
    pub picks: Vec<(NodeId, Natural, Natural)>,
}

/// A distinguishing assignment with the record of its construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub n: Natural,
    pub ell: MonotoneFn,
    pub trace: Vec<LevelTrace>,
}

/// What must end up pairwise distinct: leaves, `Λ` nodes and those roots that
/// are not themselves a node. Roots equal as labels count once.
fn entities(roots: &[RootExpr]) -> Vec<Poly1> {
    let mut out: Vec<Poly1> = Vec::new();
    for r in roots {
        let is_node = r.label.as_var().is_some() || r.label == Poly1::one();
        if !is_node && !out.contains(&r.label) {
            out.push(r.label.clone());
        }
    }
    out
}

/// Constructs `(n, ℓ)` under which all nodes and all distinct roots evaluate
/// pairwise distinctly.
///
/// Heights are handled bottom-up. The values of height `h` are taken from
/// consecutive disjoint blocks above everything chosen or used as an
/// argument so far, one block per node in increasing order of the node's
/// argument, so `ℓ` stays increasing. Inside its block each value is the first
/// one that keeps every label of a higher level, and the final family of
/// roots and nodes, pairwise distinct as polynomials in the remaining
/// unknowns. The block size exceeds the number of values that can collapse
/// any such pair, so the choice always exists.
pub fn nf_distinguish(dag: &NormalDag, roots: &[RootExpr]) -> Result<Assignment> {
    let top = dag.lam_nodes().map(|u| dag.heights[u]).max().unwrap_or(0);
    let mut levels: Vec<Vec<NodeId>> = alloc::vec![Vec::new(); top as usize + 1];
    for u in dag.lam_nodes() {
        levels[dag.heights[u] as usize].push(u);
    }
    let label = |u: NodeId| match &dag.nodes[u] {
        Node::Lam { label, .. } => label.clone(),
        _ => unreachable!("leaves have height 0"),
    };
    // groups[h] for h = 1..=top are the labels of height h; the last group is
    // the final family.
    let mut groups: Vec<Vec<Poly1>> = levels.iter().map(|l| l.iter().map(|u| label(*u)).collect()).collect();
    let mut last = entities(roots);
    last.extend(dag.lam_nodes().map(|u| Poly1::var(node_var(u))));
    last.push(Poly1::var(node_var(LEAF_N)));
    last.push(Poly1::one());
    groups.push(last);
    let block: u64 = 1 + groups.iter().map(|g| sz_bound(g)).sum::<u64>();
    let block = Natural::from(block);

    let pick = |groups: &mut Vec<Vec<Poly1>>, from: usize, v: Var, lo: &Natural| -> Result<Natural> {
        let mut x = lo.clone();
        let end = lo + &block;
        while x < end {
            let next: Vec<Vec<Poly1>> = groups[from..].iter().map(|g| g.iter().map(|p| p.substitute(v, &x)).collect()).collect();
            if next.iter().all(|g| pairwise_distinct(g).is_none()) {
                for (g, n) in groups[from..].iter_mut().zip(next) {
                    *g = n;
                }
                return Ok(x);
            }
            x += 1u32;
        }
        Err(Error::VerificationFailed)
    };

    let two = Natural::from(2u32);
    let n = pick(&mut groups, 1, node_var(LEAF_N), &two)?;
    let mut trace = alloc::vec![LevelTrace { height: 0, lo: two.clone(), hi: n.clone(), picks: alloc::vec![(LEAF_N, Natural::zero(), n.clone())] }];
    let mut values: Vec<Natural> = alloc::vec![Natural::zero(); dag.len()];
    values[LEAF_ONE] = Natural::one();
    values[LEAF_N] = n.clone();
    let mut ceiling = n.clone();
    let mut points: Vec<(Natural, Natural)> = Vec::new();
    for (h, level) in levels.iter().enumerate().skip(1) {
        let mut args: Vec<(Natural, NodeId)> = level.iter().map(|u| (eval_label(&label(*u), &values), *u)).collect();
        args.sort();
        if args.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::VerificationFailed);
        }
        for (a, _) in &args {
            ceiling = ceiling.max(a.clone());
        }
        let lo = &ceiling + 1u32;
        let mut picks = Vec::new();
        for (k, (a, u)) in args.into_iter().enumerate() {
            let start = &lo + &block * k;
            let v = pick(&mut groups, h + 1, node_var(u), &start)?;
            values[u] = v.clone();
            points.push((a.clone(), v.clone()));
            picks.push((u, a, v));
        }
        let hi = &lo + &block * picks.len() - 1u32;
        ceiling = hi.clone();
        trace.push(LevelTrace { height: h as u32, lo, hi, picks });
    }
    points.sort();
    if points.is_empty() {
        points.push((Natural::zero(), Natural::zero()));
    }
    let ell = MonotoneFn::new(points, Tail::AffineSlope(Natural::one()))?;
    let a = Assignment { n, ell, trace };
    if !verify_distinct(dag, roots, &a) {
        return Err(Error::VerificationFailed);
    }
    Ok(a)
}

/// Whether all nodes and all distinct non-node roots evaluate pairwise
/// distinctly under the assignment.
pub fn verify_distinct(dag: &NormalDag, roots: &[RootExpr], a: &Assignment) -> bool {
    let values = dag.evaluate(&a.n, &a.ell);
    let mut all: Vec<Natural> = values.clone();
    all.extend(entities(roots).iter().map(|r| eval_label(r, &values)));
    let set: BTreeSet<&Natural> = all.iter().collect();
    set.len() == all.len()
}
