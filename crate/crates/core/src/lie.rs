//! Simplicity of the Lie algebra `[L, L]` for a Leavitt path algebra `L`.
//!
//! Two independent decision procedures: the span route, which asks whether
//! `(1, …, 1)` lies in the span of the B-vectors over the prime field, and
//! the K₀ route, which looks at the unit class in `Coker(M_E)` and only
//! applies to purely infinite simple graphs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::analysis::{is_purely_infinite_simple, is_simple_lpa, is_trivial_lpa, Witness};
use crate::error::{FieldError, LinalgError, VerdictError};
use crate::field::{FieldSpec, FieldVector, PrimeField, Rational, Rationals};
use crate::graph::{family, Family, Graph};
use crate::linalg::{
    class_order, cokernel, is_p_divisible, non_membership_certificate, pointed_isomorphism,
    span_membership, span_membership_in, ElementOrder, K0Presentation, NonMembership, PointedIso,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Simple,
    NotSimple,
    /// The graph falls outside the hypotheses of the decision procedure.
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Simple => "simple",
            Status::NotSimple => "not-simple",
            Status::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Span,
    K0,
    ClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Span => "span",
            Route::K0 => "k0",
            Route::ClosedForm => "closed-form",
        })
    }
}

/// What decided a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The path algebra itself is not simple.
    AlgebraNotSimple { witnesses: Vec<Witness> },
    /// The K₀ route needs a purely infinite simple graph.
    NotPurelyInfiniteSimple { witnesses: Vec<Witness> },
    /// One vertex, no edges: the algebra is the field and `[L, L] = 0`.
    Commutative,
    /// `(1, …, 1) = Σ t_i B_i` with these coefficients.
    OnesInSpan { coefficients: FieldVector },
    /// `(1, …, 1)` is outside the span of the B-vectors.
    OnesOutsideSpan { certificate: NonMembership },
    /// The span test passes but the characteristic divides the matrix size.
    CharDividesSize { d: u64 },
    /// Closed form for `M_d(L(n))`.
    ClosedForm {
        n: u64,
        d: u64,
        divides_n_minus_1: bool,
        divides_d: bool,
    },
    /// Characteristic 0: order of the unit class in K₀.
    UnitClassOrder { order: ElementOrder },
    /// Characteristic p: whether the unit class is p-divisible in K₀.
    UnitClassDivisibility { p: u64, divisible: bool },
}

impl Reason {
    pub fn describe(&self, g: Option<&Graph>) -> String {
        let witnesses = |ws: &[Witness]| -> String {
            match g {
                Some(g) => ws
                    .iter()
                    .map(|w| w.describe(g))
                    .collect::<Vec<_>>()
                    .join("; "),
                None => format!("{} failed condition(s)", ws.len()),
            }
        };
        match self {
            Reason::AlgebraNotSimple { witnesses: ws } => {
                format!("path algebra is not simple: {}", witnesses(ws))
            }
            Reason::NotPurelyInfiniteSimple { witnesses: ws } => {
                format!("graph is not purely infinite simple: {}", witnesses(ws))
            }
            Reason::Commutative => "algebra is the field itself, [L,L] = 0".to_string(),
            Reason::OnesInSpan { coefficients } => {
                format!("(1,…,1) = Σ t_i B_i with t = {coefficients}")
            }
            Reason::OnesOutsideSpan { certificate } => format!(
                "(1,…,1) not in span of B-vectors: rank {} < {}, separator y = {}",
                certificate.rank, certificate.augmented_rank, certificate.separator
            ),
            Reason::CharDividesSize { d } => format!("characteristic divides matrix size {d}"),
            Reason::ClosedForm {
                n,
                d,
                divides_n_minus_1,
                divides_d,
            } => format!(
                "M_{d}(L({n})): char {} n−1 = {}, char {} d = {d}",
                if *divides_n_minus_1 {
                    "divides"
                } else {
                    "does not divide"
                },
                n - 1,
                if *divides_d {
                    "divides"
                } else {
                    "does not divide"
                },
            ),
            Reason::UnitClassOrder { order } => format!("unit class in K₀ has order {order}"),
            Reason::UnitClassDivisibility { p, divisible } => format!(
                "unit class in K₀ is {}{p}-divisible",
                if *divisible { "" } else { "not " }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieVerdict {
    pub status: Status,
    pub reason: Reason,
    pub route: Route,
    pub field: FieldSpec,
}

impl LieVerdict {
    fn new(status: Status, reason: Reason, route: Route, field: FieldSpec) -> Self {
        LieVerdict {
            status,
            reason,
            route,
            field,
        }
    }
}

fn ones(m: usize) -> Vec<BigInt> {
    vec![BigInt::one(); m]
}

fn span_test(g: &Graph, field: FieldSpec) -> Reason {
    let b = g.b_vectors();
    let target = ones(g.vertex_count());
    match span_membership_in(field, &b, &target).expect("B-vectors have length m") {
        Some(coefficients) => Reason::OnesInSpan { coefficients },
        None => Reason::OnesOutsideSpan {
            certificate: non_membership_certificate(field, &b, &target)
                .expect("B-vectors have length m")
                .expect("target is outside the span"),
        },
    }
}

/// Lie simplicity of `[L, L]` over a field of the given characteristic,
/// decided by the span test on the B-vectors.
pub fn lie_simplicity(g: &Graph, field: FieldSpec) -> LieVerdict {
    let simple = is_simple_lpa(g);
    if !simple.verdict {
        return LieVerdict::new(
            Status::Inapplicable,
            Reason::AlgebraNotSimple {
                witnesses: simple.witnesses,
            },
            Route::Span,
            field,
        );
    }
    if is_trivial_lpa(g) {
        return LieVerdict::new(Status::NotSimple, Reason::Commutative, Route::Span, field);
    }
    let reason = span_test(g, field);
    let status = match reason {
        Reason::OnesInSpan { .. } => Status::NotSimple,
        _ => Status::Simple,
    };
    LieVerdict::new(status, reason, Route::Span, field)
}

/// Lie simplicity of `[M_d(L), M_d(L)]`.
///
/// For the trivial graph `M_d(K) ≅ L(line(d))`, so the test is applied
/// with the (empty) span test passing.
pub fn matrix_lie_simplicity(
    g: &Graph,
    d: u64,
    field: FieldSpec,
) -> Result<LieVerdict, VerdictError> {
    if d < 1 {
        return Err(VerdictError::MatrixSize(d));
    }
    let base = lie_simplicity(g, field);
    if d == 1 {
        return Ok(base);
    }
    let divides = field.divides(&BigInt::from(d));
    Ok(match base.status {
        Status::Inapplicable => base,
        _ if is_trivial_lpa(g) || base.status == Status::Simple => {
            if divides {
                LieVerdict::new(
                    Status::NotSimple,
                    Reason::CharDividesSize { d },
                    Route::Span,
                    field,
                )
            } else if is_trivial_lpa(g) {
                let reason = span_test(&family(Family::Line(d)).expect("d >= 2"), field);
                LieVerdict::new(Status::Simple, reason, Route::Span, field)
            } else {
                base
            }
        }
        _ => base,
    })
}

/// `[M_d(L(n)), M_d(L(n))]` is simple iff the characteristic is nonzero,
/// divides `n − 1`, and does not divide `d`.
pub fn leavitt_closed_form(n: u64, d: u64, field: FieldSpec) -> Result<LieVerdict, VerdictError> {
    if n < 2 || d < 1 {
        return Err(VerdictError::ClosedFormRange { n, d });
    }
    let divides_n_minus_1 = field.characteristic() != 0 && field.divides(&BigInt::from(n - 1));
    let divides_d = field.divides(&BigInt::from(d));
    let status = if divides_n_minus_1 && !divides_d {
        Status::Simple
    } else {
        Status::NotSimple
    };
    Ok(LieVerdict::new(
        status,
        Reason::ClosedForm {
            n,
            d,
            divides_n_minus_1,
            divides_d,
        },
        Route::ClosedForm,
        field,
    ))
}

/// The K₀ presentation of `L(E)`: `Coker(M_E)` with the class of `1`.
pub fn k0_presentation(g: &Graph) -> K0Presentation {
    cokernel(&g.m_matrix()).expect("M_E is square")
}

/// Decision from the unit class alone, for a purely infinite simple graph
/// with K₀ presentation `pres`.
pub fn verdict_from_unit_class(pres: &K0Presentation, field: FieldSpec) -> LieVerdict {
    let (status, reason) = match field {
        FieldSpec::Rational => {
            let order = class_order(pres);
            let s = if order.is_finite() {
                Status::NotSimple
            } else {
                Status::Simple
            };
            (s, Reason::UnitClassOrder { order })
        }
        FieldSpec::Prime(p) => {
            let divisible = is_p_divisible(pres, p);
            let s = if divisible {
                Status::NotSimple
            } else {
                Status::Simple
            };
            (s, Reason::UnitClassDivisibility { p, divisible })
        }
    };
    LieVerdict::new(status, reason, Route::K0, field)
}

/// The K₀ route: only for purely infinite simple graphs.
pub fn lie_simplicity_via_k0(g: &Graph, field: FieldSpec) -> LieVerdict {
    let pis = is_purely_infinite_simple(g);
    if !pis.verdict {
        return LieVerdict::new(
            Status::Inapplicable,
            Reason::NotPurelyInfiniteSimple {
                witnesses: pis.witnesses,
            },
            Route::K0,
            field,
        );
    }
    verdict_from_unit_class(&k0_presentation(g), field)
}

/// One row of a [`KpReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpRow {
    pub field: FieldSpec,
    pub first: LieVerdict,
    pub second: LieVerdict,
}

impl KpRow {
    pub fn agree(&self) -> bool {
        self.first.status == self.second.status
    }
}

/// Comparison of two graphs through their pointed K₀ groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KpReport {
    pub first: K0Presentation,
    pub second: K0Presentation,
    /// Failed purely-infinite-simple conditions for each graph.
    pub first_pis_witnesses: Vec<Witness>,
    pub second_pis_witnesses: Vec<Witness>,
    /// `None` when either graph is not purely infinite simple.
    pub pointed_iso: Option<PointedIso>,
    pub rows: Vec<KpRow>,
    /// A pointed isomorphism exists but some pair of verdicts differs.
    pub contradiction: bool,
}

impl KpReport {
    pub fn applicable(&self) -> bool {
        self.pointed_iso.is_some()
    }
}

/// Pointed K₀ comparison plus span-route verdicts for both graphs at each
/// characteristic. Verdicts must agree whenever a pointed isomorphism exists.
pub fn kp_consistency(
    a: &Graph,
    b: &Graph,
    fields: &[FieldSpec],
    max_group_order: u64,
) -> KpReport {
    let first = k0_presentation(a);
    let second = k0_presentation(b);
    let pa = is_purely_infinite_simple(a);
    let pb = is_purely_infinite_simple(b);
    let pointed_iso =
        (pa.verdict && pb.verdict).then(|| pointed_isomorphism(&first, &second, max_group_order));
    let rows: Vec<KpRow> = fields
        .iter()
        .map(|&field| KpRow {
            field,
            first: lie_simplicity(a, field),
            second: lie_simplicity(b, field),
        })
        .collect();
    let contradiction = pointed_iso == Some(PointedIso::Exists) && rows.iter().any(|r| !r.agree());
    KpReport {
        first,
        second,
        first_pis_witnesses: pa.witnesses,
        second_pis_witnesses: pb.witnesses,
        pointed_iso,
        rows,
        contradiction,
    }
}

/// Reads rational coefficients into the prime field of characteristic `field`.
pub fn coefficients_in(field: FieldSpec, coeffs: &[Rational]) -> Result<FieldVector, FieldError> {
    Ok(match field.gf() {
        None => FieldVector::Rational(coeffs.to_vec()),
        Some(gf) => FieldVector::Modular {
            modulus: gf.modulus(),
            residues: coeffs
                .iter()
                .map(|q| {
                    gf.from_rational(q)
                        .ok_or_else(|| FieldError::NotInField(q.to_string()))
                })
                .collect::<Result<_, _>>()?,
        },
    })
}

fn combination<F: PrimeField>(
    field: &F,
    g: &Graph,
    k: &[F::Scalar],
) -> Result<Option<Vec<F::Scalar>>, LinalgError> {
    let regular: Vec<_> = g.vertices().filter(|&v| g.is_regular(v)).collect();
    let b = g.b_vectors();
    let cols: Vec<Vec<F::Scalar>> = regular
        .iter()
        .map(|v| b[v.0].iter().map(|x| field.from_integer(x)).collect())
        .collect();
    if cols.is_empty() {
        if k.len() != g.vertex_count() {
            return Err(LinalgError::DimensionMismatch {
                expected: g.vertex_count(),
                found: k.len(),
            });
        }
        return Ok(k
            .iter()
            .all(|x| *x == field.zero())
            .then(|| vec![field.zero(); g.vertex_count()]));
    }
    Ok(crate::linalg::solve_columns(field, &cols, k)?.map(|t_reg| {
        let mut t = vec![field.zero(); g.vertex_count()];
        for (v, x) in regular.iter().zip(t_reg) {
            t[v.0] = x;
        }
        t
    }))
}

/// Given `k`, finds `t` with `k = Σ t_i B_i` and `t_i = 0` at every sink,
/// which exhibits `Σ k_i v_i` as a sum of commutators; `None` when `k` is
/// outside the span.
pub fn vertex_combination_in_commutator(
    g: &Graph,
    coeffs: &[Rational],
    field: FieldSpec,
) -> Result<Option<FieldVector>, VerdictError> {
    if coeffs.len() != g.vertex_count() {
        return Err(LinalgError::DimensionMismatch {
            expected: g.vertex_count(),
            found: coeffs.len(),
        }
        .into());
    }
    let k = coefficients_in(field, coeffs).map_err(LinalgError::from)?;
    Ok(match k {
        FieldVector::Rational(k) => combination(&Rationals, g, &k)?.map(FieldVector::Rational),
        FieldVector::Modular { modulus, residues } => {
            let gf = field.gf().expect("prime field");
            combination(&gf, g, &residues)?
                .map(|residues| FieldVector::Modular { modulus, residues })
        }
    })
}

/// Span coefficients over ℚ, for callers that already hold integers.
pub fn ones_in_span_over_q(g: &Graph) -> Option<Vec<Rational>> {
    span_membership(&Rationals, &g.b_vectors(), &ones(g.vertex_count())).expect("length m")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn fam(f: Family) -> Graph {
        family(f).unwrap()
    }

    fn ch(c: u64) -> FieldSpec {
        FieldSpec::new(c).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            lie_simplicity(&fam(Family::Example4), ch(0)).status,
            Status::Simple
        );
        assert_eq!(
            lie_simplicity(&fam(Family::Rose(3)), ch(0)).status,
            Status::NotSimple
        );
        for c in [0, 2, 3] {
            assert_eq!(
                lie_simplicity(&fam(Family::Rose(1)), ch(c)).status,
                Status::Inapplicable
            );
        }
        let ps = fam(Family::PrimeSet(6));
        assert_eq!(lie_simplicity(&ps, ch(3)).status, Status::NotSimple);
        assert_eq!(lie_simplicity(&ps, ch(5)).status, Status::Simple);
    }

    #[test]
    fn matrix_versions() {
        let r3 = fam(Family::Rose(3));
        assert_eq!(
            matrix_lie_simplicity(&r3, 2, ch(2)).unwrap().status,
            Status::NotSimple
        );
        assert_eq!(
            matrix_lie_simplicity(&r3, 3, ch(2)).unwrap().status,
            Status::Simple
        );
        assert_eq!(
            matrix_lie_simplicity(&fam(Family::Example4), 1, ch(7))
                .unwrap()
                .status,
            Status::Simple
        );
        assert_eq!(
            matrix_lie_simplicity(&r3, 0, ch(2)),
            Err(VerdictError::MatrixSize(0))
        );
        let point = parse_graph("vertex v").unwrap();
        assert_eq!(
            matrix_lie_simplicity(&point, 1, ch(3)).unwrap().status,
            Status::NotSimple
        );
        assert_eq!(
            matrix_lie_simplicity(&point, 2, ch(3)).unwrap().status,
            Status::Simple
        );
        assert_eq!(
            matrix_lie_simplicity(&point, 3, ch(3)).unwrap().status,
            Status::NotSimple
        );
    }

    #[test]
    fn closed_form() {
        for c in [0, 2, 3, 5, 7] {
            assert_eq!(
                leavitt_closed_form(2, 1, ch(c)).unwrap().status,
                Status::NotSimple
            );
        }
        assert_eq!(
            leavitt_closed_form(7, 1, ch(2)).unwrap().status,
            Status::Simple
        );
        assert_eq!(
            leavitt_closed_form(7, 1, ch(3)).unwrap().status,
            Status::Simple
        );
        assert_eq!(
            leavitt_closed_form(7, 1, ch(5)).unwrap().status,
            Status::NotSimple
        );
        assert_eq!(
            leavitt_closed_form(3, 4, ch(2)).unwrap().status,
            Status::NotSimple
        );
        assert!(leavitt_closed_form(1, 1, ch(2)).is_err());
        assert!(leavitt_closed_form(3, 0, ch(2)).is_err());
    }

    #[test]
    fn k0_route() {
        assert_eq!(
            lie_simplicity_via_k0(&fam(Family::Example4), ch(0)).status,
            Status::Simple
        );
        let tv = fam(Family::TwoVertex { u: 2, v: 2, p: 2 });
        assert_eq!(lie_simplicity_via_k0(&tv, ch(2)).status, Status::Simple);
        assert_eq!(
            lie_simplicity_via_k0(&fam(Family::Line(3)), ch(5)).status,
            Status::Inapplicable
        );
    }

    #[test]
    fn kp_examples() {
        let fields = FieldSpec::defaults();
        let r = kp_consistency(
            &fam(Family::Rose(2)),
            &fam(Family::MatrixRose { n: 2, d: 3 }),
            &fields,
            1_000_000,
        );
        assert_eq!(r.pointed_iso, Some(PointedIso::Exists));
        assert!(r
            .rows
            .iter()
            .all(|x| x.agree() && x.first.status == Status::NotSimple));
        assert!(!r.contradiction);
        let r = kp_consistency(
            &fam(Family::Rose(4)),
            &fam(Family::Rose(2)),
            &fields,
            1_000_000,
        );
        assert_eq!(r.pointed_iso, Some(PointedIso::DoesNotExist));
        let r = kp_consistency(
            &fam(Family::Line(2)),
            &fam(Family::Rose(2)),
            &fields,
            1_000_000,
        );
        assert!(!r.applicable());
    }

    #[test]
    fn vertex_combinations() {
        let r3 = fam(Family::Rose(3));
        let one = [Rational::one()];
        assert_eq!(
            vertex_combination_in_commutator(&r3, &one, ch(0)).unwrap(),
            Some(FieldVector::Rational(vec![Rational::new(
                1.into(),
                2.into()
            )]))
        );
        assert_eq!(
            vertex_combination_in_commutator(&r3, &one, ch(2)).unwrap(),
            None
        );
        let l = fam(Family::Line(3));
        let zero = vec![Rational::from_integer(0.into()); 3];
        let t = vertex_combination_in_commutator(&l, &zero, ch(2))
            .unwrap()
            .unwrap();
        assert_eq!(t.entries(), vec!["0", "0", "0"]);
        assert!(vertex_combination_in_commutator(&l, &one, ch(0)).is_err());
        let half = [Rational::new(1.into(), 2.into())];
        assert!(vertex_combination_in_commutator(&r3, &half, ch(2)).is_err());
    }
}
