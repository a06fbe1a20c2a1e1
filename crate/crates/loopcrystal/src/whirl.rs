//! n-periodic banded unipotent matrices: whirls, Chevalley generators,
//! products and windows. These represent elements of U^{<=B} in the
//! unipotent loop group.

use crate::crystal::{FactorPoint, ProductPoint};
use crate::error::{Error, Result};
use crate::poly::canon_color;
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An infinite n-periodic Z x Z matrix, unit main diagonal, supported on
/// diagonals 0..=band above the main one. `diagonals[d][i]` is the entry in
/// row of residue i+1 (1-based) at column offset d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicBandedMatrix {
    n: usize,
    diagonals: Vec<Vec<Rat>>,
}

impl PeriodicBandedMatrix {
    /// Builds from the diagonals at offsets 0..; offset 0 must be all ones.
    pub fn from_diagonals(n: usize, diagonals: Vec<Vec<Rat>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("n must be >= 1".into()));
        }
        if diagonals.is_empty() || diagonals[0] != vec![Rat::one(); n] {
            return Err(Error::InvalidInput("main diagonal must be all ones".into()));
        }
        if diagonals.iter().any(|d| d.len() != n) {
            return Err(Error::DimensionMismatch("diagonal length != n".into()));
        }
        let mut m = PeriodicBandedMatrix { n, diagonals };
        m.trim();
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        PeriodicBandedMatrix {
            n,
            diagonals: vec![vec![Rat::one(); n]],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn band(&self) -> usize {
        self.diagonals.len() - 1
    }

    fn trim(&mut self) {
        while self.diagonals.len() > 1
            && self.diagonals.last().unwrap().iter().all(Rat::is_zero)
        {
            self.diagonals.pop();
        }
    }

    /// The (i, j) entry, by residue reduction; zero outside the band.
    pub fn entry(&self, i: i64, j: i64) -> Rat {
        let d = j - i;
        if d < 0 || d as usize > self.band() {
            return Rat::zero();
        }
        self.diagonals[d as usize][canon_color(i, self.n) - 1].clone()
    }

    /// Dense block of entries over the given inclusive index ranges.
    pub fn window(&self, rows: std::ops::RangeInclusive<i64>, cols: std::ops::RangeInclusive<i64>) -> Vec<Vec<Rat>> {
        rows.map(|i| cols.clone().map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn multiply(&self, other: &PeriodicBandedMatrix) -> Result<PeriodicBandedMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "n = {} vs n = {}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let band = self.band() + other.band();
        let mut diagonals = vec![vec![Rat::zero(); n]; band + 1];
        for d in 0..=band {
            for i in 1..=n as i64 {
                let mut sum = Rat::zero();
                for e in 0..=d.min(self.band()) {
                    let rem = d - e;
                    if rem > other.band() {
                        continue;
                    }
                    sum += self.entry(i, i + e as i64) * other.entry(i + e as i64, i + d as i64);
                }
                diagonals[d][i as usize - 1] = sum;
            }
        }
        let mut out = PeriodicBandedMatrix { n, diagonals };
        out.trim();
        Ok(out)
    }
}

/// The whirl M(x): band 1 with x^{(i)} at (i, i+1).
pub fn whirl(x: &FactorPoint) -> PeriodicBandedMatrix {
    let n = x.n();
    let sup = (1..=n as i64).map(|i| x.coord(i).clone()).collect();
    PeriodicBandedMatrix {
        n,
        diagonals: vec![vec![Rat::one(); n], sup],
    }
}

/// A whirl built from a raw coordinate tuple (zero entries allowed; the
/// all-zero tuple gives the identity).
pub fn whirl_raw(coords: &[Rat]) -> PeriodicBandedMatrix {
    let n = coords.len();
    let mut m = PeriodicBandedMatrix {
        n,
        diagonals: vec![vec![Rat::one(); n], coords.to_vec()],
    };
    m.trim();
    m
}

/// The Chevalley generator u_k(a): band 1 with `a` at (i, i+1) only for
/// rows i of residue k.
pub fn chevalley(k: i64, a: &Rat, n: usize) -> PeriodicBandedMatrix {
    let mut sup = vec![Rat::zero(); n];
    sup[canon_color(k, n) - 1] = a.clone();
    let mut m = PeriodicBandedMatrix {
        n,
        diagonals: vec![vec![Rat::one(); n], sup],
    };
    m.trim();
    m
}

/// The product of whirls M(x_1) ... M(x_m).
pub fn from_factors(x: &ProductPoint) -> PeriodicBandedMatrix {
    let mut acc = PeriodicBandedMatrix::identity(x.n());
    for f in x.factors() {
        acc = acc.multiply(&whirl(f)).expect("matching n");
    }
    acc
}

impl Serialize for PeriodicBandedMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            band: usize,
            diagonals: BTreeMap<String, &'a Vec<Rat>>,
        }
        Repr {
            n: self.n,
            band: self.band(),
            diagonals: self
                .diagonals
                .iter()
                .enumerate()
                .map(|(d, v)| (d.to_string(), v))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PeriodicBandedMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            band: usize,
            diagonals: BTreeMap<String, Vec<Rat>>,
        }
        let r = Repr::deserialize(de)?;
        let mut diagonals = vec![vec![Rat::zero(); r.n]; r.band + 1];
        for (key, v) in r.diagonals {
            let d: usize = key
                .parse()
                .map_err(|_| serde::de::Error::custom("non-numeric diagonal offset"))?;
            if d > r.band {
                return Err(serde::de::Error::custom("diagonal offset beyond band"));
            }
            diagonals[d] = v;
        }
        PeriodicBandedMatrix::from_diagonals(r.n, diagonals).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::apply_s;

    fn fp(coords: &[i64]) -> FactorPoint {
        FactorPoint::new(coords.iter().map(|&c| Rat::from(c)).collect()).unwrap()
    }

    fn running_point() -> ProductPoint {
        ProductPoint::new(vec![fp(&[2, 3]), fp(&[5, 7])]).unwrap()
    }

    #[test]
    fn whirl_read_off() {
        let m = whirl(&fp(&[2, 3]));
        assert_eq!(m.band(), 1);
        assert_eq!(m.entry(1, 2), Rat::from(2));
        assert_eq!(m.entry(2, 3), Rat::from(3));
        assert_eq!(
            m.window(1..=2, 1..=3),
            vec![
                vec![Rat::one(), Rat::from(2), Rat::zero()],
                vec![Rat::zero(), Rat::one(), Rat::from(3)],
            ]
        );
    }

    #[test]
    fn degenerate_whirl_is_identity() {
        let m = whirl_raw(&[Rat::zero(), Rat::zero()]);
        assert_eq!(m, PeriodicBandedMatrix::identity(2));
        assert_eq!(m.band(), 0);
    }

    #[test]
    fn chevalley_read_off() {
        let u = chevalley(1, &Rat::from(4), 2);
        assert_eq!(u.entry(1, 2), Rat::from(4));
        assert_eq!(u.entry(2, 3), Rat::zero());
        assert_eq!(chevalley(1, &Rat::zero(), 2), PeriodicBandedMatrix::identity(2));
    }

    #[test]
    fn chevalley_one_parameter_subgroup() {
        let a = Rat::new(3, 5);
        let b = Rat::new(7, 2);
        let lhs = chevalley(2, &a, 3).multiply(&chevalley(2, &b, 3)).unwrap();
        assert_eq!(lhs, chevalley(2, &(a + b), 3));
    }

    #[test]
    fn multiply_whirls() {
        let m = whirl(&fp(&[2, 3])).multiply(&whirl(&fp(&[5, 7]))).unwrap();
        assert_eq!(m.band(), 2);
        assert_eq!(m.entry(1, 2), Rat::from(7)); // 2+5
        assert_eq!(m.entry(2, 3), Rat::from(10)); // 3+7
        assert_eq!(m.entry(1, 3), Rat::from(14)); // 2*7
        assert_eq!(m.entry(2, 4), Rat::from(15)); // 3*5
    }

    #[test]
    fn multiply_identity_and_assoc() {
        let a = whirl(&fp(&[2, 3]));
        let b = whirl(&fp(&[5, 7]));
        let c = whirl(&fp(&[11, 13]));
        assert_eq!(a.multiply(&PeriodicBandedMatrix::identity(2)).unwrap(), a);
        let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_mismatch() {
        let a = whirl(&fp(&[2, 3]));
        let b = whirl(&fp(&[2, 3, 5]));
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn from_factors_matches_multiply() {
        let m = from_factors(&running_point());
        assert_eq!(m.entry(1, 3), Rat::from(14));
        assert_eq!(m.entry(2, 4), Rat::from(15));
        let single = ProductPoint::new(vec![fp(&[2, 3])]).unwrap();
        assert_eq!(from_factors(&single), whirl(&fp(&[2, 3])));
    }

    #[test]
    fn entry_periodicity() {
        let m = whirl(&fp(&[2, 3]));
        assert_eq!(m.entry(3, 4), Rat::from(2)); // row 3 = 1 mod 2
        assert_eq!(m.entry(5, 5), Rat::one());
        let y = from_factors(&running_point());
        for i in -3..4i64 {
            for j in -3..6i64 {
                assert_eq!(y.entry(i, j), y.entry(i + 2, j + 2));
            }
        }
    }

    #[test]
    fn whirl_commute() {
        // M(x1)M(x2) = M(s1 x1)M(s1 x2)
        let x = running_point();
        let sx = apply_s(1, &x).unwrap();
        assert_eq!(from_factors(&x), from_factors(&sx));
    }

    #[test]
    fn json_round_trip() {
        let m = from_factors(&running_point());
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"band":2,"diagonals":{"0":["1","1"],"1":["7","10"],"2":["14","15"]}}"#
        );
        let back: PeriodicBandedMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
