//! Root systems of types A–G and the weight lattice of the simply connected group.
//!
//! Weights are integer vectors in the fundamental-weight basis, so pairing with
//! the `i`-th simple coroot reads off coordinate `i`. Roots are stored in the
//! simple-root basis and coroots in the simple-coroot basis.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the total rank of a root system.
pub const DEFAULT_RANK_CAP: usize = 8;

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Parses a comma-separated coordinate list such as `"1,-2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("weight coordinate {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

/// A coroot in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coroot {
    pub coords: Vec<i64>,
}

/// One irreducible component of a Dynkin type, e.g. `B2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Parses `"A1"`, `"B2"`, `"A2xA1"` or `"A2,A1"` into its components.
pub fn parse_type_spec(spec: &str) -> Result<Vec<CartanType>> {
    let mut out = Vec::new();
    for token in spec.split([',', 'x', '×']) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let mut chars = token.chars();
        let family = chars.next().unwrap().to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(token.to_string()))?;
        let ok = match family {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(Error::UnknownType(token.to_string()));
        }
        out.push(CartanType { family, rank });
    }
    if out.is_empty() {
        return Err(Error::UnknownType(spec.to_string()));
    }
    Ok(out)
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

/// Simple roots realised in a Euclidean lattice (scaled so that all
/// coordinates are integers); only inner products matter downstream.
fn euclidean_simple_roots(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let diff = |dim: usize, i: usize, j: usize| -> Vec<i64> {
        let mut v = vec![0; dim];
        v[i] += 1;
        v[j] -= 1;
        v
    };
    match t.family {
        'A' => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        'B' => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(unit(n, n - 1, 1));
            r
        }
        'C' => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(unit(n, n - 1, 2));
            r
        }
        'D' => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            r.push(last);
            r
        }
        'G' => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        'F' => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        'E' => {
            // E8 in Bourbaki numbering, doubled; E6 and E7 are the leading sub-diagrams.
            let mut r = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                let mut v = vec![0; 8];
                v[0] = 2;
                v[1] = 2;
                v
            }];
            for i in 0..6 {
                let mut v = vec![0; 8];
                v[i + 1] = 2;
                v[i] = -2;
                r.push(v);
            }
            r.truncate(n);
            r
        }
        _ => unreachable!("validated by parse_type_spec"),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A (possibly reducible) crystallographic root system together with its
/// weight lattice.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: Vec<CartanType>,
    pub rank: usize,
    /// `cartan_matrix[i][j] = <alpha_i, alpha_j^vee>`; row `i` is `alpha_i` in
    /// fundamental-weight coordinates.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    pub positive_coroots: Vec<Coroot>,
    pub simple_roots: Vec<Root>,
    pub coxeter_number: i64,
    /// Simple-root indices of each irreducible component.
    pub components: Vec<Vec<usize>>,
    gram: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    root_component: Vec<usize>,
    /// `(A^T)^{-1} = adj / det`, used to express weights in root coordinates.
    inv_transpose_num: Vec<Vec<i64>>,
    inv_det: i64,
}

impl RootSystem {
    pub fn from_spec(spec: &str) -> Result<Self> {
        Self::build(&parse_type_spec(spec)?)
    }

    pub fn build(types: &[CartanType]) -> Result<Self> {
        Self::build_with_cap(types, DEFAULT_RANK_CAP)
    }

    pub fn build_with_cap(types: &[CartanType], cap: usize) -> Result<Self> {
        let rank: usize = types.iter().map(|t| t.rank).sum();
        if rank > cap {
            return Err(Error::RankCap { rank, cap });
        }
        if rank == 0 {
            return Err(Error::UnknownType(String::new()));
        }
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &t in types {
            let simple = euclidean_simple_roots(t);
            for i in 0..t.rank {
                for j in 0..t.rank {
                    gram[offset + i][offset + j] = dot(&simple[i], &simple[j]);
                }
            }
            components.push((offset..offset + t.rank).collect::<Vec<_>>());
            offset += t.rank;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| 2 * gram[i][j] / gram[j][j])
                    .collect::<Vec<_>>()
            })
            .collect();

        // Close the simple roots under simple reflections.
        let simple_roots: Vec<Root> = (0..rank)
            .map(|i| Root {
                coords: unit(rank, i, 1),
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for r in &simple_roots {
            seen.insert(r.coords.clone());
            queue.push_back(r.coords.clone());
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| k[j] * cartan[j][i]).sum();
                let mut image = k.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive_roots: Vec<Root> = seen
            .into_iter()
            .filter(|k| k.iter().all(|&x| x >= 0))
            .map(|coords| Root { coords })
            .collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then(a.coords.cmp(&b.coords)));

        let positive_coroots: Vec<Coroot> = positive_roots
            .iter()
            .map(|r| {
                let k = &r.coords;
                let norm: i64 = (0..rank)
                    .flat_map(|i| (0..rank).map(move |j| (i, j)))
                    .map(|(i, j)| k[i] * k[j] * gram[i][j])
                    .sum();
                let coords = (0..rank)
                    .map(|i| {
                        debug_assert_eq!((k[i] * gram[i][i]) % norm, 0);
                        k[i] * gram[i][i] / norm
                    })
                    .collect();
                Coroot { coords }
            })
            .collect();

        let root_weights: Vec<Weight> = positive_roots
            .iter()
            .map(|r| {
                Weight(
                    (0..rank)
                        .map(|j| (0..rank).map(|i| r.coords[i] * cartan[i][j]).sum())
                        .collect(),
                )
            })
            .collect();
        let root_component: Vec<usize> = positive_roots
            .iter()
            .map(|r| {
                let first = r.coords.iter().position(|&x| x != 0).unwrap();
                components.iter().position(|c| c.contains(&first)).unwrap()
            })
            .collect();

        let coxeter_number = positive_coroots
            .iter()
            .map(|c| c.coords.iter().sum::<i64>() + 1)
            .max()
            .unwrap();

        let (inv_transpose_num, inv_det) = integer_inverse(&transpose(&cartan));

        Ok(RootSystem {
            cartan_type: types.to_vec(),
            rank,
            cartan_matrix: cartan,
            positive_roots,
            positive_coroots,
            simple_roots,
            coxeter_number,
            components,
            gram,
            root_weights,
            root_component,
            inv_transpose_num,
            inv_det,
        })
    }

    pub fn type_string(&self) -> String {
        self.cartan_type
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of the simple root `alpha_i` among the positive roots.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| r.coords == unit(self.rank, i, 1))
            .expect("simple roots are positive")
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.coords == coords)
    }

    /// The positive root `beta` (by index) in fundamental-weight coordinates.
    pub fn root_weight(&self, idx: usize) -> &Weight {
        &self.root_weights[idx]
    }

    /// Irreducible component containing the positive root `idx`.
    pub fn root_component(&self, idx: usize) -> usize {
        self.root_component[idx]
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(())
    }

    /// `<lambda, beta^vee>` for a coroot given in simple-coroot coordinates.
    pub fn pairing(&self, lambda: &Weight, coroot: &Coroot) -> Result<i64> {
        self.check_rank(lambda)?;
        if coroot.coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: coroot.coords.len(),
            });
        }
        Ok(dot(&lambda.0, &coroot.coords))
    }

    /// `<lambda, beta^vee>` for the positive root with index `idx`.
    #[inline]
    pub fn pair(&self, lambda: &Weight, idx: usize) -> i64 {
        dot(&lambda.0, &self.positive_coroots[idx].coords)
    }

    /// `<lambda + rho, beta^vee>`.
    #[inline]
    pub fn pair_rho(&self, lambda: &Weight, idx: usize) -> i64 {
        let c = &self.positive_coroots[idx].coords;
        lambda.0.iter().zip(c).map(|(x, y)| (x + 1) * y).sum()
    }

    /// Half-sum of positive roots: all ones in the fundamental-weight basis.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// Inner product of two roots given in simple-root coordinates, in the
    /// scaled normalisation used internally.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.rank)
            .flat_map(|i| (0..self.rank).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * b[j] * self.gram[i][j])
            .sum()
    }

    /// Coordinates of `lambda` in the simple-root basis, if it lies in the
    /// root lattice.
    pub fn root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for row in &self.inv_transpose_num {
            let num = dot(row, &lambda.0);
            if num % self.inv_det != 0 {
                return None;
            }
            out.push(num / self.inv_det);
        }
        Some(out)
    }

    pub fn weight_of_root_coords(&self, k: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|j| {
                    (0..self.rank)
                        .map(|i| k[i] * self.cartan_matrix[i][j])
                        .sum()
                })
                .collect(),
        )
    }

    /// `mu <= lambda`: `lambda - mu` is a nonnegative integer combination of
    /// simple roots.
    pub fn root_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_coords(&(lambda - mu)) {
            Some(k) => k.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Simple-root indices whose span contains the positive root `idx`.
    pub fn root_support(&self, idx: usize) -> BTreeSet<usize> {
        self.positive_roots[idx]
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

pub(crate) fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Inverse of an invertible integer matrix as `(numerators, common denominator)`.
fn integer_inverse(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col];
        for j in 0..n {
            a[col][j] /= pv;
            inv[col][j] /= pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    let den = inv
        .iter()
        .flatten()
        .fold(1i64, |acc, q| num_integer_lcm(acc, *q.denom()));
    let num = inv
        .iter()
        .map(|r| r.iter().map(|q| q.numer() * (den / q.denom())).collect())
        .collect();
    (num, den)
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
