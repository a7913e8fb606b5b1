//! Standard Levi data: the subgroup `W_{I,p}`, the fundamental domain `C̄_I`,
//! orbit representatives and the orbit sizes `N_I`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::affine_weyl::{
    check_p, generate_group, is_prime, simple_reflections_sp, AffineElt, FiniteElt, Reflection,
    GROUP_ENUMERATION_CAP,
};
use crate::alcoves::{fold_with_walls, hyperplanes_through, in_closed_fundamental_alcove};
use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};

/// A canonical representative of a `W_{I,p}`-dot-orbit: a weight in `C̄_I`.
pub type OrbitLabel = Weight;

/// Parses a Levi subset such as `"1,3"` or `"I=1,3"` (1-based) into sorted
/// 0-based simple-root indices. The empty string and `"-"` give `I = ∅`.
pub fn parse_levi(text: &str, rank: usize) -> Result<Vec<usize>> {
    let body = text.trim();
    let body = body.strip_prefix("I=").unwrap_or(body).trim();
    let body = body.trim_start_matches('{').trim_end_matches('}');
    if body.is_empty() || body == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in body.split(',') {
        let i: usize = tok
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("Levi index {tok:?}: {e}")))?;
        if i == 0 || i > rank {
            return Err(Error::Parse(format!("Levi index {i} outside 1..={rank}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All subsets of `{0, .., rank-1}`, ordered by size and then lexicographically.
pub fn all_levi_subsets(rank: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << rank))
        .map(|mask| (0..rank).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    subsets
}

/// The datum `(Φ, I, p)` together with the finite group `W_I`.
#[derive(Clone, Debug)]
pub struct LeviDatum {
    rs: Arc<RootSystem>,
    levi: Vec<usize>,
    p: i64,
    wi: Vec<FiniteElt>,
    wi_set: HashSet<FiniteElt>,
    levi_roots: Vec<usize>,
    sp: Vec<Reflection>,
}

impl LeviDatum {
    pub fn new(rs: Arc<RootSystem>, levi: &[usize], p: i64) -> Result<Self> {
        check_p(&rs, p)?;
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&i| i >= rs.rank) {
            return Err(Error::Parse(format!(
                "Levi index {} outside 1..={}",
                bad + 1,
                rs.rank
            )));
        }
        let gens: Vec<FiniteElt> = levi
            .iter()
            .map(|&i| FiniteElt::simple_reflection(&rs, i))
            .collect();
        let wi = generate_group(rs.rank, &gens, GROUP_ENUMERATION_CAP)?;
        let wi_set = wi.iter().cloned().collect();
        let levi_roots = (0..rs.num_positive_roots())
            .filter(|&idx| rs.root_support(idx).iter().all(|i| levi.contains(i)))
            .collect();
        let sp = simple_reflections_sp(&rs, p)?;
        Ok(LeviDatum {
            rs,
            levi,
            p,
            wi,
            wi_set,
            levi_roots,
            sp,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn shared_root_system(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// 0-based simple-root indices in `I`.
    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn levi_string(&self) -> String {
        self.levi
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn order_wi(&self) -> u64 {
        self.wi.len() as u64
    }

    pub fn wi_elements(&self) -> &[FiniteElt] {
        &self.wi
    }

    /// Indices of the positive roots lying in `ZI`.
    pub fn levi_roots(&self) -> &[usize] {
        &self.levi_roots
    }

    pub fn sp(&self) -> &[Reflection] {
        &self.sp
    }

    /// Membership in `W_{I,p}`: `w̄ ∈ W_I` and the translation part lies in `ZI`.
    pub fn in_wip(&self, w: &AffineElt) -> bool {
        if !self.wi_set.contains(&w.finite) {
            return false;
        }
        let Some(k) = self.rs.root_coords(&Weight(w.shift.clone())) else {
            return false;
        };
        k.iter()
            .enumerate()
            .all(|(i, &x)| x % self.p == 0 && (x == 0 || self.levi.contains(&i)))
    }

    /// `0 ≤ <λ+ρ, α^vee> ≤ p` for every `α ∈ Φ+ ∩ ZI`.
    pub fn in_closed_ci(&self, lambda: &Weight) -> bool {
        self.levi_roots.iter().all(|&idx| {
            let v = self.rs.pair_rho(lambda, idx);
            (0..=self.p).contains(&v)
        })
    }

    /// `0 < <λ+ρ, α^vee> < p` for every `α ∈ Φ+ ∩ ZI`.
    pub fn in_open_ci(&self, lambda: &Weight) -> bool {
        self.levi_roots.iter().all(|&idx| {
            let v = self.rs.pair_rho(lambda, idx);
            0 < v && v < self.p
        })
    }

    /// The representative of `W_{I,p}·λ` in `C̄_I`, together with an element
    /// `x ∈ W_{I,p}` satisfying `x·rep = λ`.
    pub fn orbit_rep_with_elt(&self, lambda: &Weight) -> (AffineElt, OrbitLabel) {
        let rs = &*self.rs;
        let mut x = AffineElt::identity(rs.rank, self.p);
        let mut cur = lambda.clone();
        loop {
            let step = self.levi_roots.iter().find_map(|&root| {
                let v = rs.pair_rho(&cur, root);
                if v < 0 {
                    Some(Reflection { root, n: 0 })
                } else if v > self.p {
                    Some(Reflection { root, n: 1 })
                } else {
                    None
                }
            });
            match step {
                Some(r) => {
                    cur = r.dot(rs, self.p, &cur);
                    x = x.compose(&r.to_elt(rs, self.p));
                }
                None => return (x, cur),
            }
        }
    }

    pub fn orbit_rep(&self, lambda: &Weight) -> OrbitLabel {
        self.orbit_rep_with_elt(lambda).1
    }

    /// `N_I(λ)` by enumerating `W_I·(λ + pX)` on residues mod `p`.
    pub fn n_i_enumerated(&self, lambda: &Weight) -> u64 {
        let cosets: HashSet<Vec<i64>> = self
            .wi
            .iter()
            .map(|w| {
                let shifted = Weight(lambda.0.iter().map(|x| x + 1).collect());
                w.apply(&shifted)
                    .0
                    .iter()
                    .map(|x| (x - 1).rem_euclid(self.p))
                    .collect()
            })
            .collect();
        cosets.len() as u64
    }

    /// The orbit-size formula: `|W_I|` at regular weights; at a weight on
    /// exactly one hyperplane `H_{β,kp}`, `|W_I|/2` when `s_{β,kp} ∈ W_{I,p}`
    /// and `|W_I|` otherwise. `None` on intersections of several hyperplanes.
    pub fn n_i_formula(&self, lambda: &Weight) -> Option<u64> {
        let through = hyperplanes_through(&self.rs, lambda, self.p);
        match through.as_slice() {
            [] => Some(self.order_wi()),
            [t] => {
                let refl = t.to_elt(&self.rs, self.p);
                Some(if self.in_wip(&refl) {
                    self.order_wi() / 2
                } else {
                    self.order_wi()
                })
            }
            _ => None,
        }
    }

    /// `N_I(λ)`, cross-checked against the formula where it applies.
    pub fn n_i(&self, lambda: &Weight) -> Result<u64> {
        self.rs.check_rank(lambda)?;
        let counted = self.n_i_enumerated(lambda);
        if let Some(expected) = self.n_i_formula(lambda) {
            if expected != counted {
                return Err(Error::FormulaMismatch(format!(
                    "N_I{lambda}: orbit enumeration gives {counted}, formula gives {expected}"
                )));
            }
        }
        Ok(counted)
    }

    /// `|Sta_{W_I}(λ + pX)| = |W_I| / N_I(λ)`.
    pub fn stabilizer_order(&self, lambda: &Weight) -> Result<u64> {
        Ok(self.order_wi() / self.n_i(lambda)?)
    }

    /// Recovers `w ∈ W_p` with `w·anchor = ν` by folding `ν` into `C̄`.
    /// Fails with `WrongBlock` when `ν` is not linked to `anchor`.
    pub fn element_for(&self, nu: &Weight, anchor: &Weight) -> Result<AffineElt> {
        self.rs.check_rank(nu)?;
        let (w, base) = fold_with_walls(&self.rs, &self.sp, nu, self.p);
        if &base != anchor {
            return Err(Error::WrongBlock {
                label: nu.clone(),
                anchor: anchor.clone(),
            });
        }
        Ok(w)
    }

    /// Decides whether `ws·λ★` stays in `C_I`, given `w·λ★ ∈ C_I`. The answer
    /// is checked against `wsw⁻¹ ∉ W_{I,p}`.
    pub fn refl_stays_regular(&self, w: &AffineElt, setup: &WallSetup) -> Result<bool> {
        let here = w.dot(&setup.lambda_star);
        if !self.in_open_ci(&here) {
            return Err(Error::NotInCI(here));
        }
        let s = setup.s.to_elt(&self.rs, self.p);
        let there = w.compose(&s).dot(&setup.lambda_star);
        let stays = self.in_open_ci(&there);
        let conj_inside = self.in_wip(&w.conjugate(&s));
        if stays == conj_inside {
            return Err(Error::FormulaMismatch(format!(
                "ws·λ = {there} in C_I is {stays}, but wsw⁻¹ in W_I,p is {conj_inside}"
            )));
        }
        Ok(stays)
    }
}

/// The wall data fixed once and for all: `s ∈ S_p`, a weight `μ ∈ C̄` with
/// stabiliser `{1, s}`, and the regular base point `λ★ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSetup {
    pub s: Reflection,
    pub mu: Weight,
    pub lambda_star: Weight,
}

/// Picks `μ ∈ C̄ ∩ X(T)` whose stabiliser among the wall reflections of `C̄`
/// is exactly `{1, s}`.
///
/// For a finite wall `<·+ρ, α_i^vee> = 0` this is `ρ` with coordinate `i`
/// dropped to zero, minus `ρ`. For the affine wall of a component the
/// coordinates of `μ+ρ` on that component are the lexicographically smallest
/// positive solution of `<μ+ρ, θ^vee> = p`.
pub fn choose_mu(rs: &RootSystem, s: &Reflection, p: i64) -> Result<WallSetup> {
    if p < rs.coxeter_number {
        return Err(Error::NoSuchWeight { p });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let sp = simple_reflections_sp(rs, p)?;
    if !sp.contains(s) {
        return Err(Error::NotInSp(s.to_string()));
    }
    let mut v = vec![1i64; rs.rank];
    if s.n == 0 {
        let i = rs.positive_roots[s.root]
            .coords
            .iter()
            .position(|&c| c == 1)
            .expect("simple root");
        v[i] = 0;
    } else {
        let comp = &rs.components[rs.root_component(s.root)];
        let coeffs: Vec<i64> = comp
            .iter()
            .map(|&j| rs.positive_coroots[s.root].coords[j])
            .collect();
        let sol = smallest_positive_solution(&coeffs, p).ok_or(Error::NoSuchWeight { p })?;
        for (&j, x) in comp.iter().zip(sol) {
            v[j] = x;
        }
    }
    let mu = Weight(v.into_iter().map(|x| x - 1).collect());
    let through = hyperplanes_through(rs, &mu, p);
    if through.as_slice() != [*s] || !in_closed_fundamental_alcove(rs, &mu, p) {
        return Err(Error::NoSuchWeight { p });
    }
    Ok(WallSetup {
        s: *s,
        mu,
        lambda_star: rs.zero(),
    })
}

/// Lexicographically smallest `x` with every `x_j ≥ 1` and `Σ c_j x_j = target`.
fn smallest_positive_solution(coeffs: &[i64], target: i64) -> Option<Vec<i64>> {
    fn go(coeffs: &[i64], target: i64, acc: &mut Vec<i64>) -> bool {
        let Some((&c, rest)) = coeffs.split_first() else {
            return target == 0;
        };
        let rest_min: i64 = rest.iter().sum();
        let mut x = 1;
        while c * x + rest_min <= target {
            acc.push(x);
            if go(rest, target - c * x, acc) {
                return true;
            }
            acc.pop();
            x += 1;
        }
        false
    }
    let mut acc = Vec::with_capacity(coeffs.len());
    go(coeffs, target, &mut acc).then_some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::reflection_elt;

    fn levi(spec: &str, i: &[usize], p: i64) -> LeviDatum {
        LeviDatum::new(Arc::new(RootSystem::from_spec(spec).unwrap()), i, p).unwrap()
    }
    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn levi_parsing() {
        assert_eq!(parse_levi("1,3", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_levi("I=2", 3).unwrap(), vec![1]);
        assert_eq!(parse_levi("", 3).unwrap(), Vec::<usize>::new());
        assert!(parse_levi("4", 3).is_err());
        assert!(parse_levi("0", 3).is_err());
        assert_eq!(
            all_levi_subsets(2),
            vec![vec![], vec![0], vec![1], vec![0, 1]]
        );
    }

    #[test]
    fn wi_orders() {
        assert_eq!(levi("A2", &[], 5).order_wi(), 1);
        assert_eq!(levi("A2", &[0], 5).order_wi(), 2);
        assert_eq!(levi("A2", &[0, 1], 5).order_wi(), 6);
        assert_eq!(levi("B2", &[0, 1], 5).order_wi(), 8);
        assert_eq!(levi("G2", &[0, 1], 7).order_wi(), 12);
        assert_eq!(levi("A3", &[0, 2], 5).order_wi(), 4);
    }

    #[test]
    fn wip_membership_examples() {
        let a1 = levi("A1", &[0], 5);
        let rs = a1.root_system();
        assert!(a1.in_wip(&reflection_elt(rs, 0, 1, 5).unwrap()));
        assert!(a1.in_wip(&AffineElt::identity(1, 5)));
        let a2 = levi("A2", &[0], 5);
        let s2 = reflection_elt(
            a2.root_system(),
            a2.root_system().simple_root_index(1),
            0,
            5,
        )
        .unwrap();
        assert!(!a2.in_wip(&s2));
        let t = AffineElt::translation(a2.root_system(), &[1, 0], 5).unwrap();
        assert!(a2.in_wip(&t));
        let t2 = AffineElt::translation(a2.root_system(), &[0, 1], 5).unwrap();
        assert!(!a2.in_wip(&t2));
        let empty = levi("A1", &[], 5);
        assert!(!empty.in_wip(&reflection_elt(rs, 0, 1, 5).unwrap()));
    }

    #[test]
    fn orbit_rep_examples() {
        let a1 = levi("A1", &[0], 5);
        assert_eq!(a1.orbit_rep(&w(&[8])), w(&[0]));
        assert_eq!(a1.orbit_rep(&w(&[-1])), w(&[-1]));
        assert_eq!(a1.orbit_rep(&w(&[2])), w(&[2]));
        for x in -30..30 {
            let (el, rep) = a1.orbit_rep_with_elt(&w(&[x]));
            assert!(a1.in_closed_ci(&rep));
            assert!(a1.in_wip(&el));
            assert_eq!(el.dot(&rep), w(&[x]));
            assert_eq!(a1.orbit_rep(&rep), rep);
        }
        let empty = levi("A1", &[], 5);
        assert_eq!(empty.orbit_rep(&w(&[8])), w(&[8]));
    }

    #[test]
    fn n_i_examples() {
        let a1 = levi("A1", &[0], 5);
        assert_eq!(a1.n_i(&w(&[0])).unwrap(), 2);
        assert_eq!(a1.n_i(&w(&[-1])).unwrap(), 1);
        assert_eq!(a1.n_i(&w(&[4])).unwrap(), 1);
        assert_eq!(levi("A1", &[], 5).n_i(&w(&[3])).unwrap(), 1);
        let b2 = levi("B2", &[0, 1], 7);
        assert_eq!(b2.n_i(&w(&[0, 0])).unwrap(), 8);
        assert_eq!(a1.stabilizer_order(&w(&[-1])).unwrap(), 2);
        assert_eq!(a1.stabilizer_order(&w(&[0])).unwrap(), 1);
    }

    #[test]
    fn choose_mu_examples() {
        let a1 = RootSystem::from_spec("A1").unwrap();
        let s5 = Reflection { root: 0, n: 1 };
        let s0 = Reflection { root: 0, n: 0 };
        assert_eq!(choose_mu(&a1, &s5, 5).unwrap().mu, w(&[4]));
        assert_eq!(choose_mu(&a1, &s0, 5).unwrap().mu, w(&[-1]));
        let a2 = RootSystem::from_spec("A2").unwrap();
        assert_eq!(
            choose_mu(&a2, &Reflection { root: 0, n: 0 }, 2),
            Err(Error::NoSuchWeight { p: 2 })
        );
        for (spec, p) in [
            ("A2", 5),
            ("B2", 5),
            ("G2", 7),
            ("A3", 5),
            ("A2xA1", 5),
            ("B3", 7),
        ] {
            let rs = RootSystem::from_spec(spec).unwrap();
            for s in simple_reflections_sp(&rs, p).unwrap() {
                let setup = choose_mu(&rs, &s, p).unwrap();
                assert_eq!(s.dot(&rs, p, &setup.mu), setup.mu);
                assert!(in_closed_fundamental_alcove(&rs, &setup.mu, p));
            }
        }
        assert!(matches!(
            choose_mu(&a1, &Reflection { root: 0, n: 2 }, 5),
            Err(Error::NotInSp(_))
        ));
    }

    #[test]
    fn refl_stays_regular_examples() {
        let a1 = levi("A1", &[0], 5);
        let rs = a1.root_system();
        let setup = choose_mu(rs, &Reflection { root: 0, n: 1 }, 5).unwrap();
        assert!(!a1
            .refl_stays_regular(&AffineElt::identity(1, 5), &setup)
            .unwrap());

        let a2 = levi("A2", &[0], 5);
        let rs2 = a2.root_system();
        let s = Reflection {
            root: rs2.simple_root_index(1),
            n: 0,
        };
        let setup2 = choose_mu(rs2, &s, 5).unwrap();
        assert!(a2
            .refl_stays_regular(&AffineElt::identity(2, 5), &setup2)
            .unwrap());

        let e = levi("A1", &[], 5);
        let setup3 = choose_mu(e.root_system(), &Reflection { root: 0, n: 0 }, 5).unwrap();
        assert!(e
            .refl_stays_regular(&AffineElt::identity(1, 5), &setup3)
            .unwrap());

        let outside = reflection_elt(rs, 0, 1, 5).unwrap();
        assert!(matches!(
            a1.refl_stays_regular(&outside, &setup),
            Err(Error::NotInCI(_))
        ));
    }

    #[test]
    fn element_for_recovers_the_block() {
        let a2 = levi("A2", &[1], 5);
        let rs = a2.root_system();
        let x = w(&[7, 3]);
        match a2.element_for(&x, &rs.zero()) {
            Ok(el) => assert_eq!(el.dot(&rs.zero()), x),
            Err(Error::WrongBlock { .. }) => {}
            Err(e) => panic!("{e}"),
        }
        let nu = reflection_elt(rs, 2, 1, 5).unwrap().dot(&rs.zero());
        assert_eq!(a2.element_for(&nu, &rs.zero()).unwrap().dot(&rs.zero()), nu);
    }
}
