//! Cokernels of square integer matrices as finitely generated abelian
//! groups with a distinguished element.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix, SmithDecomposition};
use crate::error::LinalgError;

/// `Coker(M) = ℤ^m / Im(M)` in Smith coordinates, together with the image of
/// a distinguished vector (by default `(1, …, 1)ᵗ`).
///
/// Coordinate `i` is a copy of `ℤ/α_i` (`ℤ` when `α_i = 0`). Factors equal
/// to 1 are kept so coordinates line up with the decomposition; their
/// unit-class entries are always 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Presentation {
    pub invariant_factors: Vec<BigInt>,
    pub unit_class: Vec<BigInt>,
}

/// Order of an element of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

impl ElementOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, ElementOrder::Finite(_))
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl K0Presentation {
    /// Builds a presentation from invariant factors and an arbitrary class
    /// vector, reducing each coordinate into `[0, α_i)`.
    pub fn new(invariant_factors: Vec<BigInt>, class: Vec<BigInt>) -> Self {
        assert_eq!(invariant_factors.len(), class.len());
        let unit_class = invariant_factors
            .iter()
            .zip(class)
            .map(|(a, y)| if a.is_zero() { y } else { y.mod_floor(a) })
            .collect();
        K0Presentation {
            invariant_factors,
            unit_class,
        }
    }

    /// Factors other than 1, in chain order, zeros last.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|a| !a.is_one())
            .cloned()
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|a| a.is_zero())
            .count()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .filter(|a| !a.is_zero())
            .product()
    }

    pub fn is_trivial_group(&self) -> bool {
        self.invariant_factors.iter().all(|a| a.is_one())
    }

    /// Coordinates of the class on the nontrivial summands only.
    pub fn nontrivial_class(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .zip(&self.unit_class)
            .filter(|(a, _)| !a.is_one())
            .map(|(_, y)| y.clone())
            .collect()
    }

    /// Human-readable group, e.g. `Z_2 ⊕ Z_4 ⊕ Z`, or `0` for the trivial group.
    pub fn group_string(&self) -> String {
        let parts: Vec<String> = self
            .nontrivial_factors()
            .iter()
            .map(|a| {
                if a.is_zero() {
                    "Z".to_string()
                } else {
                    format!("Z_{a}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// `Coker(M)` with the class of `(1, …, 1)ᵗ`.
pub fn cokernel(m: &IntMatrix) -> Result<K0Presentation, LinalgError> {
    let ones = vec![BigInt::one(); m.rows()];
    cokernel_with_class(m, &ones).map(|(p, _)| p)
}

/// `Coker(M)` with the class of an arbitrary vector, plus the decomposition
/// used to compute it.
pub fn cokernel_with_class(
    m: &IntMatrix,
    class: &[BigInt],
) -> Result<(K0Presentation, SmithDecomposition), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if class.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: class.len(),
        });
    }
    let snf = smith_normal_form(m);
    let y = snf.u.mul_vec(class);
    Ok((K0Presentation::new(snf.diagonal(), y), snf))
}

/// Order of the distinguished class.
pub fn class_order(pres: &K0Presentation) -> ElementOrder {
    let mut order = BigInt::one();
    for (a, y) in pres.invariant_factors.iter().zip(&pres.unit_class) {
        if a.is_zero() {
            if !y.is_zero() {
                return ElementOrder::Infinite;
            }
        } else {
            order = order.lcm(&(a / a.gcd(y)));
        }
    }
    ElementOrder::Finite(order)
}

/// Whether the distinguished class equals `p · g` for some group element `g`.
pub fn is_p_divisible(pres: &K0Presentation, p: u64) -> bool {
    let p = BigInt::from(p);
    pres.invariant_factors
        .iter()
        .zip(&pres.unit_class)
        .all(|(a, y)| {
            if a.is_zero() {
                y.is_multiple_of(&p)
            } else {
                y.is_multiple_of(&p.gcd(a))
            }
        })
}

/// Outcome of asking whether two pointed groups are isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointedIso {
    Exists,
    DoesNotExist,
    /// The torsion part exceeded the search bound.
    Undecided,
}

impl fmt::Display for PointedIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointedIso::Exists => "yes",
            PointedIso::DoesNotExist => "no",
            PointedIso::Undecided => "undecided",
        })
    }
}

/// Default bound on the torsion order for [`pointed_isomorphism`].
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 1_000_000;

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Torsion group `⊕ ℤ/α_i` with every `α_i ≥ 2`, small enough for `u64`.
#[derive(Clone, Debug)]
struct Torsion {
    moduli: Vec<u64>,
    primes: Vec<u64>,
}

impl Torsion {
    fn new(moduli: Vec<u64>) -> Self {
        let mut primes: Vec<u64> = moduli
            .iter()
            .flat_map(|&a| factor(a).into_iter().map(|(p, _)| p))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        Torsion { moduli, primes }
    }

    /// Heights of `x, p·x, p²·x, …` in the p-primary component, one sequence
    /// per prime. Two elements of a finite abelian group lie in the same
    /// automorphism orbit exactly when these sequences agree.
    fn orbit_invariant(&self, x: &[u64]) -> Vec<Vec<Option<u32>>> {
        self.primes
            .iter()
            .map(|&p| {
                let comps: Vec<(u64, u64)> = self
                    .moduli
                    .iter()
                    .zip(x)
                    .filter_map(|(&a, &xi)| {
                        let e = valuation(a, p);
                        (e > 0).then(|| {
                            let pe = p.pow(e);
                            (pe, xi % pe)
                        })
                    })
                    .collect();
                let max_e = comps
                    .iter()
                    .map(|(pe, _)| valuation(*pe, p))
                    .max()
                    .unwrap_or(0);
                (0..=max_e)
                    .map(|k| {
                        comps
                            .iter()
                            .filter_map(|&(pe, z)| {
                                let w = ((z as u128 * (p as u128).pow(k)) % pe as u128) as u64;
                                (w != 0).then(|| valuation(w, p))
                            })
                            .min()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Decides whether there is a group isomorphism between the two cokernels
/// carrying one distinguished class onto the other.
///
/// Groups are compared by invariant factors. On equal groups `ℤ^r ⊕ T`,
/// automorphisms act by `(f, t) ↦ (A f, C f + D t)` with `A ∈ GL_r(ℤ)`,
/// `C ∈ Hom(ℤ^r, T)` and `D ∈ Aut(T)`, so the free parts must share their
/// content `g` and, when `g ≠ 0`, the torsion parts need only match modulo
/// `gT`. Orbits under `Aut(T)` are compared through p-height sequences;
/// the coset `t + gT` is scanned by brute force, which is why torsion orders
/// above `max_order` yield [`PointedIso::Undecided`].
pub fn pointed_isomorphism(a: &K0Presentation, b: &K0Presentation, max_order: u64) -> PointedIso {
    if a.nontrivial_factors() != b.nontrivial_factors() {
        return PointedIso::DoesNotExist;
    }
    let factors = a.nontrivial_factors();
    let (xa, xb) = (a.nontrivial_class(), b.nontrivial_class());
    let split = |x: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for (f, v) in factors.iter().zip(x) {
            if f.is_zero() {
                free.push(v.abs());
            } else {
                tors.push(v.clone());
            }
        }
        (free, tors)
    };
    let (fa, ta) = split(&xa);
    let (fb, tb) = split(&xb);
    let content = |v: &[BigInt]| v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = content(&fa);
    if g != content(&fb) {
        return PointedIso::DoesNotExist;
    }

    let torsion_order: BigInt = factors.iter().filter(|f| !f.is_zero()).product();
    if torsion_order > BigInt::from(max_order) {
        return PointedIso::Undecided;
    }
    if torsion_order.is_one() {
        return PointedIso::Exists;
    }
    let to_u64 =
        |v: &[BigInt]| -> Vec<u64> { v.iter().map(|x| x.to_u64().expect("bounded")).collect() };
    let moduli = to_u64(
        &factors
            .iter()
            .filter(|f| !f.is_zero())
            .cloned()
            .collect::<Vec<_>>(),
    );
    let torsion = Torsion::new(moduli.clone());
    let (ta, tb) = (to_u64(&ta), to_u64(&tb));
    let target = torsion.orbit_invariant(&ta);

    if g.is_zero() {
        return if torsion.orbit_invariant(&tb) == target {
            PointedIso::Exists
        } else {
            PointedIso::DoesNotExist
        };
    }

    // Scan tb + gT. In ℤ/α the subgroup gℤ/α is generated by gcd(g, α).
    let steps: Vec<u64> = moduli
        .iter()
        .map(|&a| g.gcd(&BigInt::from(a)).to_u64().expect("divides a u64"))
        .collect();
    let counts: Vec<u64> = moduli.iter().zip(&steps).map(|(a, s)| a / s).collect();
    let mut idx = vec![0u64; moduli.len()];
    loop {
        let z: Vec<u64> = (0..moduli.len())
            .map(|i| (tb[i] + idx[i] * steps[i]) % moduli[i])
            .collect();
        if torsion.orbit_invariant(&z) == target {
            return PointedIso::Exists;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return PointedIso::DoesNotExist;
            }
            idx[k] += 1;
            if idx[k] < counts[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
