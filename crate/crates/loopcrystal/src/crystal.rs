//! The basic geometric crystal on an n-torus and the shifted-index product
//! crystal on m factors, together with an executable checker for the
//! geometric-crystal axioms.

use crate::error::{Error, Result};
use crate::poly::canon_color;
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The affine type-A Cartan matrix on residues mod n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub n: usize,
}

impl CartanData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be > 1, got {n}")));
        }
        Ok(CartanData { n })
    }

    /// Entry a_{ij}; residues taken mod n.
    pub fn entry(&self, i: i64, j: i64) -> i64 {
        let n = self.n;
        let i = canon_color(i, n);
        let j = canon_color(j, n);
        if i == j {
            return 2;
        }
        if n == 2 {
            // the two off-diagonal entries are both -2
            return -2;
        }
        let d = (i as i64 - j as i64).rem_euclid(n as i64);
        if d == 1 || d == n as i64 - 1 {
            -1
        } else {
            0
        }
    }
}

/// A point of the basic crystal: an n-tuple of nonzero rationals indexed by
/// color in Z/n (canonical representatives 1..=n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPoint {
    n: usize,
    coords: Vec<Rat>,
}

impl FactorPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        let n = coords.len();
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be > 1, got {n}")));
        }
        if coords.iter().any(Rat::is_zero) {
            return Err(Error::InvalidInput("zero coordinate in FactorPoint".into()));
        }
        Ok(FactorPoint { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinate by color, with residue reduction.
    pub fn coord(&self, color: i64) -> &Rat {
        &self.coords[canon_color(color, self.n) - 1]
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Product of all n coordinates (swapped by the R-matrix).
    pub fn coord_product(&self) -> Rat {
        self.coords
            .iter()
            .fold(Rat::one(), |acc, c| acc * c)
    }
}

/// ε, φ and their ratio γ = φ/ε at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub eps: Rat,
    pub phi: Rat,
    pub gamma: Rat,
}

/// ε_k, φ_k, γ_k of a basic-crystal factor sitting at 1-based position
/// `shift` within a product (shift = 1 for a standalone point).
pub fn basic_stats(x: &FactorPoint, shift: usize, k: i64) -> Stats {
    let eps = x.coord(k + shift as i64).clone();
    let phi = x.coord(k + shift as i64 - 1).clone();
    let gamma = &phi / &eps;
    Stats { eps, phi, gamma }
}

/// The C*-action e_k^c on a basic-crystal factor at position `shift`.
pub fn basic_e(x: &FactorPoint, shift: usize, k: i64, c: &Rat) -> FactorPoint {
    assert!(!c.is_zero(), "crystal operator parameter c must be nonzero");
    let n = x.n;
    let up = canon_color(k + shift as i64 - 1, n) - 1;
    let down = canon_color(k + shift as i64, n) - 1;
    let mut coords = x.coords.clone();
    coords[up] = &coords[up] * c;
    coords[down] = &coords[down] / c;
    FactorPoint { n, coords }
}

/// A point of the product crystal X_M^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductPoint {
    n: usize,
    factors: Vec<FactorPoint>,
}

impl ProductPoint {
    pub fn new(factors: Vec<FactorPoint>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("product point needs m >= 1 factors".into()));
        }
        let n = factors[0].n;
        if factors.iter().any(|f| f.n != n) {
            return Err(Error::DimensionMismatch("factors with differing n".into()));
        }
        Ok(ProductPoint { n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &FactorPoint {
        &self.factors[i - 1]
    }

    pub fn factors(&self) -> &[FactorPoint] {
        &self.factors
    }

    pub fn with_factor(&self, i: usize, f: FactorPoint) -> ProductPoint {
        let mut factors = self.factors.clone();
        factors[i - 1] = f;
        ProductPoint { n: self.n, factors }
    }

    /// The variable assignment x_i^{(s)} -> coordinate, for polynomial
    /// evaluation against this point.
    pub fn assignment(&self) -> std::collections::BTreeMap<crate::poly::VarId, Rat> {
        let mut map = std::collections::BTreeMap::new();
        for (idx, f) in self.factors.iter().enumerate() {
            for s in 1..=self.n {
                map.insert(
                    crate::poly::VarId { factor: idx + 1, color: s },
                    f.coord(s as i64).clone(),
                );
            }
        }
        map
    }
}

impl Serialize for ProductPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            m: usize,
            factors: Vec<&'a [Rat]>,
        }
        Repr {
            n: self.n,
            m: self.m(),
            factors: self.factors.iter().map(|f| f.coords()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ProductPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            m: usize,
            factors: Vec<Vec<Rat>>,
        }
        let r = Repr::deserialize(de)?;
        if r.factors.len() != r.m {
            return Err(serde::de::Error::custom("factor count does not match m"));
        }
        if r.factors.iter().any(|f| f.len() != r.n) {
            return Err(serde::de::Error::custom("factor tuple length does not match n"));
        }
        let factors = r
            .factors
            .into_iter()
            .map(FactorPoint::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        ProductPoint::new(factors).map_err(serde::de::Error::custom)
    }
}

fn stats_rec(factors: &[FactorPoint], k: i64) -> Result<Stats> {
    let m = factors.len();
    if m == 1 {
        return Ok(basic_stats(&factors[0], 1, k));
    }
    // split off the last factor, as in the inductive proofs
    let left = stats_rec(&factors[..m - 1], k)?;
    let last = basic_stats(&factors[m - 1], m, k);
    let denom_eps = &last.phi + &left.eps;
    if denom_eps.is_zero() {
        return Err(Error::Pole(format!("phi_k(x_{m}) + eps_k(x_1..x_{})", m - 1)));
    }
    let denom_phi = &left.eps + &last.phi;
    let eps = &(&left.eps * &last.eps) / &denom_eps;
    let phi = &(&left.phi * &last.phi) / &denom_phi;
    if eps.is_zero() {
        return Err(Error::Pole("eps_k vanishes".into()));
    }
    let gamma = &phi / &eps;
    Ok(Stats { eps, phi, gamma })
}

/// Product-crystal ε_k, φ_k, γ_k.
pub fn product_stats(x: &ProductPoint, k: i64) -> Result<Stats> {
    stats_rec(&x.factors, k)
}

fn e_rec(factors: &[FactorPoint], k: i64, c: &Rat) -> Result<Vec<FactorPoint>> {
    let m = factors.len();
    if m == 1 {
        return Ok(vec![basic_e(&factors[0], 1, k, c)]);
    }
    let left = stats_rec(&factors[..m - 1], k)?;
    let last = basic_stats(&factors[m - 1], m, k);
    let denom = &last.phi + &left.eps;
    if denom.is_zero() {
        return Err(Error::Pole(format!("phi_k(x_{m}) + eps_k(x_1..x_{})", m - 1)));
    }
    let c_plus = &(&(c * &last.phi) + &left.eps) / &denom;
    if c_plus.is_zero() {
        return Err(Error::Pole("c+ vanishes".into()));
    }
    let mut out = e_rec(&factors[..m - 1], k, &c_plus)?;
    out.push(basic_e(&factors[m - 1], m, k, &(c / &c_plus)));
    Ok(out)
}

/// The product-crystal operator e_k^c.
pub fn product_e(x: &ProductPoint, k: i64, c: &Rat) -> Result<ProductPoint> {
    if c.is_zero() {
        return Err(Error::InvalidInput("c must be nonzero".into()));
    }
    Ok(ProductPoint {
        n: x.n,
        factors: e_rec(&x.factors, k, c)?,
    })
}

/// Outcome of one axiom check at one index pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: u8,
    pub i: usize,
    pub j: usize,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

/// Report of the geometric-crystal axioms (1)-(5) at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if !c.applicable {
                continue;
            }
            writeln!(
                f,
                "axiom ({}) i={} j={}: {}{}",
                c.axiom,
                c.i,
                c.j,
                if c.passed { "pass" } else { "FAIL" },
                if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }
            )?;
        }
        Ok(())
    }
}

/// Checks the geometric-crystal axioms at (x, c, c') for every ordered
/// residue pair. Axiom (1) is reported as the pointwise domain check that
/// e_i^1 is defined at x; poles in any other check are reported as failures
/// with detail, never thrown.
pub fn check_axioms(x: &ProductPoint, c: &Rat, cp: &Rat) -> AxiomReport {
    let n = x.n;
    let cartan = CartanData { n };
    let mut checks = Vec::new();

    for i in 1..=n {
        let i64i = i as i64;
        // (1) pointwise domain check
        let domain = product_e(x, i64i, &Rat::one());
        checks.push(AxiomCheck {
            axiom: 1,
            i,
            j: i,
            applicable: true,
            passed: domain.is_ok(),
            detail: domain.err().map(|e| e.to_string()).unwrap_or_default(),
        });

        // (3) eps_i(e_i^c x) = c^{-1} eps_i(x)
        let check3 = (|| -> Result<bool> {
            let before = product_stats(x, i64i)?;
            let after = product_stats(&product_e(x, i64i, c)?, i64i)?;
            Ok(after.eps == &before.eps / c)
        })();
        checks.push(AxiomCheck {
            axiom: 3,
            i,
            j: i,
            applicable: true,
            passed: check3.as_ref().copied().unwrap_or(false),
            detail: check3.err().map(|e| e.to_string()).unwrap_or_default(),
        });

        for j in 1..=n {
            let i64j = j as i64;
            // (2) gamma_j(e_i^c x) = c^{a_{ij}} gamma_j(x)
            let check2 = (|| -> Result<bool> {
                let before = product_stats(x, i64j)?;
                let after = product_stats(&product_e(x, i64i, c)?, i64j)?;
                let a = cartan.entry(i64i, i64j);
                let factor = if a >= 0 {
                    c.pow(a as u32)
                } else {
                    c.recip().pow((-a) as u32)
                };
                Ok(after.gamma == before.gamma * factor)
            })();
            checks.push(AxiomCheck {
                axiom: 2,
                i,
                j,
                applicable: true,
                passed: check2.as_ref().copied().unwrap_or(false),
                detail: check2.err().map(|e| e.to_string()).unwrap_or_default(),
            });

            if i == j {
                continue;
            }
            let a = cartan.entry(i64i, i64j);
            // (4) commuting actions for a_{ij} = 0
            let applicable4 = a == 0;
            let check4 = if applicable4 {
                (|| -> Result<bool> {
                    let lhs = product_e(&product_e(x, i64j, cp)?, i64i, c)?;
                    let rhs = product_e(&product_e(x, i64i, c)?, i64j, cp)?;
                    Ok(lhs == rhs)
                })()
            } else {
                Ok(false)
            };
            checks.push(AxiomCheck {
                axiom: 4,
                i,
                j,
                applicable: applicable4,
                passed: check4.as_ref().copied().unwrap_or(false),
                detail: if applicable4 {
                    check4.err().map(|e| e.to_string()).unwrap_or_default()
                } else {
                    String::new()
                },
            });

            // (5) Verma relation for a_{ij} = -1
            let applicable5 = a == -1;
            let check5 = if applicable5 {
                (|| -> Result<bool> {
                    let cc = c * cp;
                    let lhs = product_e(
                        &product_e(&product_e(x, i64i, cp)?, i64j, &cc)?,
                        i64i,
                        c,
                    )?;
                    let rhs = product_e(
                        &product_e(&product_e(x, i64j, c)?, i64i, &cc)?,
                        i64j,
                        cp,
                    )?;
                    Ok(lhs == rhs)
                })()
            } else {
                Ok(false)
            };
            checks.push(AxiomCheck {
                axiom: 5,
                i,
                j,
                applicable: applicable5,
                passed: check5.as_ref().copied().unwrap_or(false),
                detail: if applicable5 {
                    check5.err().map(|e| e.to_string()).unwrap_or_default()
                } else {
                    String::new()
                },
            });
        }
    }

    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fp(coords: &[i64]) -> FactorPoint {
        FactorPoint::new(coords.iter().map(|&c| Rat::from(c)).collect()).unwrap()
    }

    fn running_point() -> ProductPoint {
        ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7])]).unwrap()
    }

    #[test]
    fn cartan_entries() {
        let c2 = CartanData::new(2).unwrap();
        assert_eq!(c2.entry(1, 1), 2);
        assert_eq!(c2.entry(1, 2), -2);
        let c4 = CartanData::new(4).unwrap();
        assert_eq!(c4.entry(1, 1), 2);
        assert_eq!(c4.entry(1, 2), -1);
        assert_eq!(c4.entry(4, 1), -1);
        assert_eq!(c4.entry(1, 3), 0);
        assert!(CartanData::new(1).is_err());
    }

    #[test]
    fn basic_stats_read_off() {
        // n=2, x=(2,3), shift=1, k=1 -> (3, 2, 2/3)
        let s = basic_stats(&fp(&[2, 3]), 1, 1);
        assert_eq!(s.eps, Rat::from(3));
        assert_eq!(s.phi, Rat::from(2));
        assert_eq!(s.gamma, Rat::new(2, 3));
        // n=2, x=(5,7), shift=2, k=1 -> (5, 7, 7/5)
        let s = basic_stats(&fp(&[5, 7]), 2, 1);
        assert_eq!(s.eps, Rat::from(5));
        assert_eq!(s.phi, Rat::from(7));
        assert_eq!(s.gamma, Rat::new(7, 5));
    }

    #[test]
    fn basic_e_direct() {
        // n=2, x=(2,3), shift=1, k=1, c=5 -> (10, 3/5)
        let y = basic_e(&fp(&[2, 3]), 1, 1, &Rat::from(5));
        assert_eq!(y.coords(), &[Rat::from(10), Rat::new(3, 5)]);
        // c = 1 is the identity
        let x = fp(&[4, 9, 11]);
        assert_eq!(basic_e(&x, 1, 2, &Rat::one()), x);
    }

    #[test]
    fn basic_e_group_action() {
        let x = fp(&[2, 3, 5]);
        let c = Rat::new(3, 7);
        let cp = Rat::new(11, 2);
        let lhs = basic_e(&basic_e(&x, 1, 2, &c), 1, 2, &cp);
        let rhs = basic_e(&x, 1, 2, &(c * cp));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_stats_running_point() {
        // eps = 3*5/(7+3) = 3/2, phi = 2*7/(3+7) = 7/5
        let s = product_stats(&running_point(), 1).unwrap();
        assert_eq!(s.eps, Rat::new(3, 2));
        assert_eq!(s.phi, Rat::new(7, 5));
        assert_eq!(s.gamma, Rat::new(14, 15));
    }

    #[test]
    fn product_stats_single_factor() {
        let x = ProductPoint::new(vec![fp(&[2, 3])]).unwrap();
        for k in 1..=2 {
            let s = product_stats(&x, k).unwrap();
            let b = basic_stats(&fp(&[2, 3]), 1, k);
            assert_eq!(s.eps, b.eps);
            assert_eq!(s.phi, b.phi);
        }
    }

    #[test]
    fn product_e_running_point() {
        // k=1, c=2: c+ = 17/10, x1' = (17/5, 30/17), x2' = (17/4, 140/17)
        let y = product_e(&running_point(), 1, &Rat::from(2)).unwrap();
        assert_eq!(y.factor(1).coords(), &[Rat::new(17, 5), Rat::new(30, 17)]);
        assert_eq!(y.factor(2).coords(), &[Rat::new(17, 4), Rat::new(140, 17)]);
    }

    #[test]
    fn product_e_identity_at_c1() {
        let x = running_point();
        assert_eq!(product_e(&x, 1, &Rat::one()).unwrap(), x);
        assert_eq!(product_e(&x, 2, &Rat::one()).unwrap(), x);
    }

    #[test]
    fn eps_scales_inverse() {
        let x = running_point();
        let c = Rat::new(3, 4);
        for k in 1..=2 {
            let before = product_stats(&x, k).unwrap();
            let after = product_stats(&product_e(&x, k, &c).unwrap(), k).unwrap();
            assert_eq!(after.eps, &before.eps / &c);
            assert_eq!(after.phi, &before.phi * &c);
        }
    }

    #[test]
    fn axioms_pass_at_running_point() {
        let report = check_axioms(&running_point(), &Rat::new(5, 3), &Rat::new(7, 2));
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn axioms_trivial_at_c1() {
        let report = check_axioms(&running_point(), &Rat::one(), &Rat::one());
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn axiom5_applicable_for_n3() {
        let x = ProductPoint::new(vec![fp(&[2, 3, 5]), fp(&[7, 11, 13]), fp(&[1, 4, 9])]).unwrap();
        let report = check_axioms(&x, &Rat::new(2, 5), &Rat::new(3, 7));
        assert!(report.all_passed(), "{report}");
        assert!(report
            .checks
            .iter()
            .any(|c| c.axiom == 5 && c.applicable));
    }

    #[test]
    fn product_point_json_round_trip() {
        let x = running_point();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"m":2,"factors":[["2","3"],["5","7"]]}"#
        );
        let back: ProductPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
