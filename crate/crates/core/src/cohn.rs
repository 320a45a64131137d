//! Exact symbolic arithmetic in the Cohn path algebra `C(E)`.
//!
//! `C(E)` has the basis `{p q* : r(p) = r(q)}`, so elements are finite
//! coefficient maps over pairs of paths and equality is map equality.
//! The Leavitt path algebra is the quotient by the ideal generated by the
//! elements `y_v = v − Σ_{s(e)=v} e e*`; identities that only hold in the
//! quotient are checked here by exhibiting the required combination of
//! the `y_v` explicitly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::CohnError;
use crate::field::{PrimeField, Scalar};
use crate::graph::{EdgeId, Graph, VertexId};

/// A path in the graph; length 0 paths are vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl PathWord {
    pub fn vertex(v: VertexId) -> Self {
        PathWord {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        PathWord {
            source: g.source(e),
            range: g.target(e),
            edges: vec![e],
        }
    }

    /// Validates that consecutive edges compose.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Self, CohnError> {
        let (&first, rest) = edges
            .split_first()
            .ok_or_else(|| CohnError::Precondition("empty edge sequence".to_string()))?;
        let mut prev = first;
        for &e in rest {
            if g.target(prev) != g.source(e) {
                return Err(CohnError::NotAPath(
                    g.edge(prev).label.clone(),
                    g.edge(e).label.clone(),
                ));
            }
            prev = e;
        }
        Ok(PathWord {
            source: g.source(first),
            range: g.target(prev),
            edges: edges.to_vec(),
        })
    }

    /// Parses space-separated edge labels, or a single vertex label.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, CohnError> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if let [single] = toks.as_slice() {
            if let Some(v) = g.vertex_by_label(single) {
                if g.edge_by_label(single).is_none() {
                    return Ok(PathWord::vertex(v));
                }
            }
        }
        let edges = toks
            .iter()
            .map(|t| {
                g.edge_by_label(t)
                    .ok_or_else(|| CohnError::Precondition(format!("unknown edge {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PathWord::from_edges(g, &edges)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Same as [`PathWord::is_vertex`].
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self ⌢ other`, defined when `r(self) = s(other)`.
    pub fn concat(&self, other: &PathWord) -> Option<PathWord> {
        (self.range == other.source).then(|| PathWord {
            source: self.source,
            range: other.range,
            edges: self.edges.iter().chain(&other.edges).copied().collect(),
        })
    }

    /// If `other = self ⌢ h`, returns `h`.
    pub fn strip_prefix_of(&self, other: &PathWord) -> Option<PathWord> {
        if self.source != other.source || !other.edges.starts_with(&self.edges) {
            return None;
        }
        Some(PathWord {
            source: self.range,
            range: other.range,
            edges: other.edges[self.edges.len()..].to_vec(),
        })
    }

    fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        if self.is_vertex() {
            vec![g.vertex_label(self.source)]
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge(e).label.as_str())
                .collect()
        }
    }
}

/// Basis element `p q*` with `r(p) = r(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohnTerm {
    p: PathWord,
    q: PathWord,
}

impl CohnTerm {
    pub fn new(p: PathWord, q: PathWord) -> Result<Self, CohnError> {
        if p.range != q.range {
            return Err(CohnError::Precondition(
                "p q* needs r(p) = r(q)".to_string(),
            ));
        }
        Ok(CohnTerm { p, q })
    }

    pub fn path(&self) -> &PathWord {
        &self.p
    }

    pub fn ghost(&self) -> &PathWord {
        &self.q
    }

    /// `(p q*)(t z*)`: with `q* t = h` when `t = q h`, `= h*` when
    /// `q = t h`, and 0 otherwise.
    fn times(&self, other: &CohnTerm) -> Option<CohnTerm> {
        if let Some(h) = self.q.strip_prefix_of(&other.p) {
            let p = self.p.concat(&h).expect("r(p) = r(q) = s(h)");
            return Some(CohnTerm {
                p,
                q: other.q.clone(),
            });
        }
        if let Some(h) = other.p.strip_prefix_of(&self.q) {
            let q = other.q.concat(&h).expect("r(z) = r(t) = s(h)");
            return Some(CohnTerm {
                p: self.p.clone(),
                q,
            });
        }
        None
    }

    fn sort_key<'g>(&self, g: &'g Graph) -> (usize, Vec<&'g str>, Vec<&'g str>) {
        (
            self.p.len() + self.q.len(),
            self.p.labels(g),
            self.q.labels(g),
        )
    }

    fn render(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.p.is_vertex() || self.q.is_vertex() {
            parts.extend(self.p.labels(g).into_iter().map(str::to_string));
        }
        if !self.q.is_vertex() {
            parts.extend(
                self.q
                    .edges
                    .iter()
                    .rev()
                    .map(|&e| format!("{}^*", g.edge(e).label)),
            );
        }
        parts.join(" ")
    }
}

/// Finite linear combination of basis terms with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnElement<S> {
    terms: BTreeMap<CohnTerm, S>,
}

impl<S: Scalar> CohnElement<S> {
    pub fn zero() -> Self {
        CohnElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CohnTerm, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &CohnTerm) -> Option<&S> {
        self.terms.get(t)
    }

    pub fn from_term(term: CohnTerm, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(term, c);
        x
    }

    fn add_term(&mut self, term: CohnTerm, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&term) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(term, sum);
                }
            }
            None => {
                self.terms.insert(term, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CohnElement {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Deterministic text form: `c * labels` terms joined by ` + `, ghost
    /// edges marked `^*`, ordered by total path length and then labels.
    pub fn render(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(&CohnTerm, &S)> = self.terms.iter().collect();
        items.sort_by(|a, b| match a.0.sort_key(g).cmp(&b.0.sort_key(g)) {
            Ordering::Equal => a.0.cmp(b.0),
            o => o,
        });
        items
            .iter()
            .map(|(t, c)| format!("{c} * {}", t.render(g)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Multiplication and constructors for `C(E)` over a fixed graph and field.
#[derive(Clone, Debug)]
pub struct CohnAlgebra<'g, F: PrimeField> {
    graph: &'g Graph,
    field: F,
}

pub type Element<F> = CohnElement<<F as PrimeField>::Scalar>;

impl<'g, F: PrimeField> CohnAlgebra<'g, F> {
    pub fn new(graph: &'g Graph, field: F) -> Self {
        CohnAlgebra { graph, field }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn term(&self, p: PathWord, q: PathWord, c: F::Scalar) -> Result<Element<F>, CohnError> {
        if !self.field.contains(&c) {
            return Err(CohnError::FieldMismatch);
        }
        Ok(CohnElement::from_term(CohnTerm::new(p, q)?, c))
    }

    pub fn vertex(&self, v: VertexId) -> Element<F> {
        let w = PathWord::vertex(v);
        CohnElement::from_term(CohnTerm { p: w.clone(), q: w }, self.field.one())
    }

    /// The path `p` itself, i.e. `p r(p)*`.
    pub fn path(&self, p: &PathWord) -> Element<F> {
        let r = PathWord::vertex(p.range);
        CohnElement::from_term(CohnTerm { p: p.clone(), q: r }, self.field.one())
    }

    /// The ghost path `p*`, i.e. `r(p) p*`.
    pub fn ghost(&self, p: &PathWord) -> Element<F> {
        let r = PathWord::vertex(p.range);
        CohnElement::from_term(CohnTerm { p: r, q: p.clone() }, self.field.one())
    }

    pub fn edge(&self, e: EdgeId) -> Element<F> {
        self.path(&PathWord::edge(self.graph, e))
    }

    pub fn ghost_edge(&self, e: EdgeId) -> Element<F> {
        self.ghost(&PathWord::edge(self.graph, e))
    }

    pub fn scale(&self, x: &Element<F>, c: &F::Scalar) -> Result<Element<F>, CohnError> {
        if !self.field.contains(c) {
            return Err(CohnError::FieldMismatch);
        }
        Ok(x.scale(c))
    }

    fn check(&self, x: &Element<F>) -> Result<(), CohnError> {
        if x.terms.values().all(|c| self.field.contains(c)) {
            Ok(())
        } else {
            Err(CohnError::FieldMismatch)
        }
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>, CohnError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = CohnElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some(t) = a.times(b) {
                    out.add_term(t, ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>, CohnError> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        Ok(xy.add(&yx.neg()))
    }

    /// `T(p q*) = ε_{r(p)}` when `p = q`, else 0; extended linearly.
    pub fn trace(&self, x: &Element<F>) -> Vec<F::Scalar> {
        let mut out = vec![self.field.zero(); self.graph.vertex_count()];
        for (t, c) in &x.terms {
            if t.p == t.q {
                let i = t.p.range.0;
                out[i] = out[i].clone() + c.clone();
            }
        }
        out
    }

    /// `y_v = v − Σ_{s(e)=v} e e*`; `v` must not be a sink.
    pub fn n_generator(&self, v: VertexId) -> Result<Element<F>, CohnError> {
        if self.graph.is_sink(v) {
            return Err(CohnError::SinkVertex(
                self.graph.vertex_label(v).to_string(),
            ));
        }
        let mut y = self.vertex(v);
        for &e in self.graph.out_edges(v) {
            let w = PathWord::edge(self.graph, e);
            y.add_term(CohnTerm { p: w.clone(), q: w }, -self.field.one());
        }
        Ok(y)
    }

    pub fn render(&self, x: &Element<F>) -> String {
        x.render(self.graph)
    }
}

/// `a · [left, right]`, one summand of a commutator expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorSummand<S> {
    pub coefficient: S,
    pub left: CohnElement<S>,
    pub right: CohnElement<S>,
}

/// Claimed identity `target = Σ a_k [left_k, right_k]` with the exact
/// evaluation of the right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorIdentity<S> {
    pub target: CohnElement<S>,
    pub summands: Vec<CommutatorSummand<S>>,
    pub evaluated: CohnElement<S>,
    pub verified: bool,
}

impl<S: Scalar> CommutatorIdentity<S> {
    pub fn render(&self, g: &Graph) -> String {
        let rhs: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                format!(
                    "{} * [{}, {}]",
                    s.coefficient,
                    s.left.render(g),
                    s.right.render(g)
                )
            })
            .collect();
        format!("{} = {}", self.target.render(g), rhs.join(" + "))
    }
}

fn evaluate<F: PrimeField>(
    alg: &CohnAlgebra<'_, F>,
    target: Element<F>,
    summands: Vec<CommutatorSummand<F::Scalar>>,
) -> Result<CommutatorIdentity<F::Scalar>, CohnError> {
    let mut evaluated = CohnElement::zero();
    for s in &summands {
        let c = alg.commutator(&s.left, &s.right)?;
        evaluated = evaluated.add(&c.scale(&s.coefficient));
    }
    let verified = evaluated == target;
    Ok(CommutatorIdentity {
        target,
        summands,
        evaluated,
        verified,
    })
}

/// Explicit commutator expressions for paths.
///
/// With `ghost = None`: for a path `p` with `s(p) ≠ r(p)`, returns the
/// identities `p = [p, r(p)]` and `p* = [r(p), p*]`.
///
/// With `ghost = Some(q)`: for paths `p, q` of positive length with
/// `r(p) = r(q)`, returns `p q* = [p, q*] (+ correction)`, where the
/// correction handles `p = q x` or `q = p x` with `s(x) ≠ r(x)`. Overlaps
/// through a closed `x` are rejected.
pub fn lemma_commutator_witness<F: PrimeField>(
    alg: &CohnAlgebra<'_, F>,
    p: &PathWord,
    ghost: Option<&PathWord>,
) -> Result<Vec<CommutatorIdentity<F::Scalar>>, CohnError> {
    let one = alg.field().one();
    let summand = |c: F::Scalar, left: Element<F>, right: Element<F>| CommutatorSummand {
        coefficient: c,
        left,
        right,
    };
    if p.is_vertex() {
        return Err(CohnError::Precondition(
            "p must have positive length".to_string(),
        ));
    }
    match ghost {
        None => {
            if p.source() == p.range() {
                return Err(CohnError::Precondition("s(p) = r(p)".to_string()));
            }
            let r = alg.vertex(p.range());
            let path = alg.path(p);
            let gh = alg.ghost(p);
            Ok(vec![
                evaluate(
                    alg,
                    path.clone(),
                    vec![summand(one.clone(), path, r.clone())],
                )?,
                evaluate(alg, gh.clone(), vec![summand(one, r, gh)])?,
            ])
        }
        Some(q) => {
            if q.is_vertex() {
                return Err(CohnError::Precondition(
                    "q must have positive length".to_string(),
                ));
            }
            if p.range() != q.range() {
                return Err(CohnError::Precondition(
                    "r(p) ≠ r(q), so p q* = 0".to_string(),
                ));
            }
            let target = alg.term(p.clone(), q.clone(), one.clone())?;
            let mut summands = vec![summand(one.clone(), alg.path(p), alg.ghost(q))];
            if let Some(x) = q.strip_prefix_of(p) {
                // [p, q*] = p q* − x, and x = [x, r(x)]
                if x.source() == x.range() {
                    return Err(CohnError::Precondition("p = q x with x closed".to_string()));
                }
                summands.push(summand(one, alg.path(&x), alg.vertex(x.range())));
            } else if let Some(x) = p.strip_prefix_of(q) {
                // [p, q*] = p q* − x*, and x* = [r(x), x*]
                if x.source() == x.range() {
                    return Err(CohnError::Precondition("q = p x with x closed".to_string()));
                }
                summands.push(summand(one, alg.vertex(x.range()), alg.ghost(&x)));
            }
            Ok(vec![evaluate(alg, target, summands)?])
        }
    }
}

/// Result of checking the vertex-combination witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck<S> {
    /// `W = −Σ_i t_i Σ_{s(e)=v_i} [e, e*]`.
    pub commutator_sum: CohnElement<S>,
    /// `Σ_i k_i v_i`.
    pub vertex_combination: CohnElement<S>,
    /// `Σ_i t_i y_{v_i}`, an element of the ideal killed in the quotient.
    pub n_correction: CohnElement<S>,
    pub verified: bool,
}

fn field_vec_eq<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

/// Checks, symbolically in `C(E)`, that
/// `−Σ_i t_i Σ_{s(e)=v_i} [e, e*] = Σ_i k_i v_i + Σ_i t_i y_{v_i}`,
/// which shows `Σ k_i v_i` is a sum of commutators in the quotient.
///
/// Preconditions: `t` vanishes at sinks and `k = Σ t_i B_i`; violations are
/// reported as errors, distinct from a failed verification.
pub fn verify_witness<F: PrimeField>(
    alg: &CohnAlgebra<'_, F>,
    k: &[F::Scalar],
    t: &[F::Scalar],
) -> Result<WitnessCheck<F::Scalar>, CohnError> {
    let g = alg.graph();
    let field = alg.field();
    let m = g.vertex_count();
    for v in [k, t] {
        if v.len() != m {
            return Err(crate::error::LinalgError::DimensionMismatch {
                expected: m,
                found: v.len(),
            }
            .into());
        }
        if !v.iter().all(|c| field.contains(c)) {
            return Err(CohnError::FieldMismatch);
        }
    }
    for v in g.vertices() {
        if g.is_sink(v) && !t[v.0].is_zero() {
            return Err(CohnError::Precondition(format!(
                "t is nonzero at sink {}",
                g.vertex_label(v)
            )));
        }
    }
    let combo: Vec<F::Scalar> = (0..m)
        .map(|j| {
            g.b_vectors()
                .iter()
                .zip(t)
                .fold(field.zero(), |acc, (b, ti)| {
                    acc + ti.clone() * field.from_integer(&b[j])
                })
        })
        .collect();
    if !field_vec_eq(&combo, k) {
        return Err(CohnError::Precondition("k ≠ Σ t_i B_i".to_string()));
    }

    let mut commutator_sum = CohnElement::zero();
    let mut n_correction = CohnElement::zero();
    let mut vertex_combination = CohnElement::zero();
    for v in g.vertices() {
        vertex_combination = vertex_combination.add(&alg.vertex(v).scale(&k[v.0]));
        if t[v.0].is_zero() {
            continue;
        }
        let mut inner = CohnElement::zero();
        for &e in g.out_edges(v) {
            inner = inner.add(&alg.commutator(&alg.edge(e), &alg.ghost_edge(e))?);
        }
        commutator_sum = commutator_sum.add(&inner.scale(&(-t[v.0].clone())));
        n_correction = n_correction.add(&alg.n_generator(v)?.scale(&t[v.0]));
    }
    let verified = commutator_sum == vertex_combination.add(&n_correction);
    Ok(WitnessCheck {
        commutator_sum,
        vertex_combination,
        n_correction,
        verified,
    })
}

impl<S: Scalar> fmt::Display for WitnessCheck<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.verified { "VERIFIED" } else { "FAILED" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rational, Rationals};
    use crate::graph::{family, parse_graph, Family};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn basic_products() {
        let g = parse_graph("vertex a\nvertex b\nedge-label e a b\nedge-label f a b").unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let e = alg.edge(EdgeId(0));
        let es = alg.ghost_edge(EdgeId(0));
        let fs = alg.ghost_edge(EdgeId(1));
        let f = alg.edge(EdgeId(1));
        assert_eq!(alg.render(&alg.multiply(&e, &es).unwrap()), "1 * e e^*");
        assert_eq!(alg.multiply(&es, &e).unwrap(), alg.vertex(VertexId(1)));
        assert!(alg.multiply(&es, &f).unwrap().is_zero());
        assert!(alg.multiply(&fs, &e).unwrap().is_zero());
        let c = alg.commutator(&e, &es).unwrap();
        assert_eq!(alg.render(&c), "-1 * b + 1 * e e^*");
        let v = alg.vertex(VertexId(0));
        assert!(alg.commutator(&v, &v).unwrap().is_zero());
        let rb = alg.vertex(VertexId(1));
        assert_eq!(alg.commutator(&e, &rb).unwrap(), e);
    }

    #[test]
    fn traces() {
        let g = family(Family::Line(2)).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        assert_eq!(
            alg.trace(&alg.vertex(VertexId(0))),
            vec![one.clone(), zero.clone()]
        );
        assert_eq!(
            alg.trace(&alg.edge(EdgeId(0))),
            vec![zero.clone(), zero.clone()]
        );
        let eet = alg
            .multiply(&alg.edge(EdgeId(0)), &alg.ghost_edge(EdgeId(0)))
            .unwrap();
        assert_eq!(alg.trace(&eet), vec![zero, one]);
    }

    #[test]
    fn generators() {
        let g = family(Family::Rose(2)).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let y = alg.n_generator(VertexId(0)).unwrap();
        assert_eq!(
            alg.render(&y),
            "1 * v1 + -1 * v1_v1_1 v1_v1_1^* + -1 * v1_v1_2 v1_v1_2^*"
        );
        let l = family(Family::Line(2)).unwrap();
        let alg = CohnAlgebra::new(&l, Rationals);
        assert_eq!(
            alg.render(&alg.n_generator(VertexId(0)).unwrap()),
            "1 * v1 + -1 * v1_v2_1 v1_v2_1^*"
        );
        assert!(matches!(
            alg.n_generator(VertexId(1)),
            Err(CohnError::SinkVertex(_))
        ));
    }

    #[test]
    fn rose3_witness_over_q() {
        let g = family(Family::Rose(3)).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let check = verify_witness(&alg, &[q(1, 1)], &[q(1, 2)]).unwrap();
        assert!(check.verified);
        // −(1/2)·(−2v − y) = v + y/2
        assert_eq!(
            check.n_correction,
            alg.n_generator(VertexId(0)).unwrap().scale(&q(1, 2))
        );
    }

    #[test]
    fn rose4_witness_over_gf2() {
        let g = family(Family::Rose(4)).unwrap();
        let f = Gf::new(2).unwrap();
        let alg = CohnAlgebra::new(&g, f);
        let check = verify_witness(&alg, &[f.one()], &[f.one()]).unwrap();
        assert!(check.verified);
    }

    #[test]
    fn witness_preconditions() {
        let g = family(Family::Rose(3)).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        assert!(matches!(
            verify_witness(&alg, &[q(1, 1)], &[q(1, 3)]),
            Err(CohnError::Precondition(_))
        ));
        let l = family(Family::Line(2)).unwrap();
        let alg = CohnAlgebra::new(&l, Rationals);
        assert!(matches!(
            verify_witness(&alg, &[q(0, 1), q(0, 1)], &[q(0, 1), q(1, 1)]),
            Err(CohnError::Precondition(_))
        ));
        let zero = vec![q(0, 1); 2];
        assert!(verify_witness(&alg, &zero, &zero).unwrap().verified);
    }

    #[test]
    fn field_mismatch_detected() {
        let g = family(Family::Rose(2)).unwrap();
        let a5 = CohnAlgebra::new(&g, Gf::new(5).unwrap());
        let a3 = CohnAlgebra::new(&g, Gf::new(3).unwrap());
        let x = a5.vertex(VertexId(0));
        let y = a3.vertex(VertexId(0));
        assert_eq!(a3.multiply(&x, &y).unwrap_err(), CohnError::FieldMismatch);
    }

    #[test]
    fn lemma_part_one_and_two() {
        let g = family(Family::Line(2)).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let p = PathWord::edge(&g, EdgeId(0));
        let ids = lemma_commutator_witness(&alg, &p, None).unwrap();
        assert!(ids.iter().all(|i| i.verified));
        assert_eq!(ids[0].render(&g), "1 * v1_v2_1 = 1 * [1 * v1_v2_1, 1 * v2]");

        let g = family(Family::Example4).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        let p = PathWord::parse(&g, "v1_v2_1").unwrap();
        let q = PathWord::parse(&g, "v3_v2_1").unwrap();
        let ids = lemma_commutator_witness(&alg, &p, Some(&q)).unwrap();
        assert_eq!(ids.len(), 1);
        assert!(ids[0].verified);
        assert_eq!(ids[0].summands.len(), 1);

        let looped = PathWord::parse(&g, "v1_v1_1").unwrap();
        assert!(lemma_commutator_witness(&alg, &looped, None).is_err());
    }

    #[test]
    fn lemma_part_two_with_overlap() {
        let g = family(Family::Example4).unwrap();
        let alg = CohnAlgebra::new(&g, Rationals);
        // p = q x with x = v2 → v4 (not closed)
        let q = PathWord::parse(&g, "v1_v2_1").unwrap();
        let p = PathWord::parse(&g, "v1_v2_1 v2_v4_1").unwrap();
        let x = lemma_commutator_witness(&alg, &p, Some(&PathWord::parse(&g, "v4_v3_1").unwrap()));
        assert!(x.is_err(), "ranges differ");
        let p3 = PathWord::parse(&g, "v1_v2_1 v2_v4_1 v4_v3_1").unwrap();
        let q3 = PathWord::parse(&g, "v1_v2_1 v2_v4_1 v4_v3_1 v3_v3_1").unwrap();
        // q3 = p3 x with x the loop at v3: excluded
        assert!(lemma_commutator_witness(&alg, &p3, Some(&q3)).is_err());
        let q2 = PathWord::parse(&g, "v3_v2_1").unwrap();
        let ids = lemma_commutator_witness(&alg, &q, Some(&q2)).unwrap();
        assert!(ids[0].verified);
        // p = q x, x = v2_v4_1 v4_v3_1 v3_v2_1 is closed at v2: excluded
        let long = PathWord::parse(&g, "v1_v2_1 v2_v4_1 v4_v3_1 v3_v2_1").unwrap();
        assert!(lemma_commutator_witness(&alg, &long, Some(&q)).is_err());
        // p = q x with x = v2_v1_1, not closed
        let pq = PathWord::parse(&g, "v1_v2_1 v2_v1_1").unwrap();
        let q1 = PathWord::parse(&g, "v1_v2_1 v2_v1_1").unwrap();
        let _ = q1;
        let loop1 = PathWord::parse(&g, "v1_v1_1").unwrap();
        let ids = lemma_commutator_witness(&alg, &pq, Some(&loop1)).unwrap();
        assert!(ids[0].verified);
        let tail = PathWord::parse(&g, "v2_v1_1").unwrap();
        let head = PathWord::parse(&g, "v1_v2_1").unwrap();
        let _ = (tail, head, p);
    }

    #[test]
    fn path_parsing() {
        let g = family(Family::Example4).unwrap();
        assert!(PathWord::parse(&g, "v1_v2_1 v2_v4_1").is_ok());
        assert!(matches!(
            PathWord::parse(&g, "v1_v2_1 v1_v2_1"),
            Err(CohnError::NotAPath(_, _))
        ));
        assert!(PathWord::parse(&g, "v3").unwrap().is_vertex());
    }
}
