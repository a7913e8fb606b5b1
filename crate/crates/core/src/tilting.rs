//! Reduced expressions for dominant labels, Θ-product characters, the
//! triangularity check, wall-crossing decompositions and greedy peeling.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::affine_weyl::{AffineElt, Reflection};
use crate::alcoves::{
    d_value, is_dominant, is_regular, single_reflection_compare, uparrow_leq, walls_of_alcove,
    Relation, WallSide,
};
use crate::error::{Error, Result};
use crate::groth::{convert_basis, hom_dim, theta_s, Basis, GVector, HomKind};
use crate::levi::{choose_mu, LeviDatum, OrbitLabel};
use crate::rootdata::{RootSystem, Weight};

/// A word `s_1 ⋯ s_n` in `S_p` with per-prefix certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub letters: Vec<Reflection>,
    /// `s_1⋯s_i·λ★` for `i = 0..=n`.
    pub prefix_targets: Vec<Weight>,
    /// Entry `i`: `s_1⋯s_i·λ★ ≺ s_1⋯s_{i+1}·λ★`.
    pub ascent: Vec<bool>,
    /// Entry `i`: `s_1⋯s_i⋯s_1 ∉ W_{I,p}` (for the prefix of length `i+1`).
    pub regularity: Vec<bool>,
}

impl ReducedWord {
    /// Computes the certificates of an arbitrary word.
    pub fn certify(letters: &[Reflection], levi: &LeviDatum) -> Result<ReducedWord> {
        let rs = levi.root_system();
        let p = levi.p();
        let sp = levi.sp();
        if let Some(bad) = letters.iter().find(|r| !sp.contains(r)) {
            return Err(Error::NotInSp(bad.to_string()));
        }
        let mut prefix = AffineElt::identity(rs.rank, p);
        let mut prefix_targets = vec![rs.zero()];
        let mut ascent = Vec::with_capacity(letters.len());
        let mut regularity = Vec::with_capacity(letters.len());
        for s in letters {
            let s_elt = s.to_elt(rs, p);
            regularity.push(!levi.in_wip(&prefix.conjugate(&s_elt)));
            prefix = prefix.compose(&s_elt);
            let target = prefix.dot(&rs.zero());
            let before = d_value(rs, prefix_targets.last().expect("nonempty"), p)?;
            ascent.push(d_value(rs, &target, p)? > before);
            prefix_targets.push(target);
        }
        Ok(ReducedWord {
            letters: letters.to_vec(),
            prefix_targets,
            ascent,
            regularity,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn all_certified(&self) -> bool {
        self.ascent.iter().all(|&b| b) && self.regularity.iter().all(|&b| b)
    }

    pub fn target(&self) -> &Weight {
        self.prefix_targets
            .last()
            .expect("prefix targets start at λ★")
    }

    /// Word syntax `"np:j,..."`.
    pub fn to_word_string(&self, p: i64) -> String {
        self.letters
            .iter()
            .map(|r| r.word_token(p))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses the word syntax `"5:1,0:1"`: each letter is `k:j` with `k = np`
/// the affine constant and `j` the 1-based positive-root index.
pub fn parse_word(text: &str, rs: &RootSystem, p: i64) -> Result<Vec<Reflection>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let (k, j) = tok
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("word letter {tok:?} is not k:j")))?;
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{k:?}: {e}")))?;
            let j: usize = j
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{j:?}: {e}")))?;
            if k % p != 0 {
                return Err(Error::Parse(format!(
                    "affine constant {k} is not a multiple of p = {p}"
                )));
            }
            if j == 0 || j > rs.num_positive_roots() {
                return Err(Error::NotAPositiveRoot(j.wrapping_sub(1)));
            }
            Ok(Reflection {
                root: j - 1,
                n: k / p,
            })
        })
        .collect()
}

/// A reduced expression for a dominant regular label `ν ∈ C̄_I`, built by
/// descending from `ν` across walls `H_{β,n_β p}` with `β ∉ ZI` and
/// conjugating the descent into `S_p`.
pub fn domexp_word(nu: &Weight, levi: &LeviDatum) -> Result<ReducedWord> {
    let rs = levi.root_system();
    let p = levi.p();
    rs.check_rank(nu)?;
    if !is_dominant(rs, nu) {
        return Err(Error::NotDominant(nu.clone()));
    }
    if !is_regular(rs, nu, p) {
        return Err(Error::NotRegular(nu.clone()));
    }
    if !levi.in_closed_ci(nu) {
        return Err(Error::NotInCI(nu.clone()));
    }
    levi.element_for(nu, &rs.zero())?;

    let mut descent: Vec<Reflection> = Vec::new();
    let mut cur = nu.clone();
    let mut d = d_value(rs, &cur, p)?;
    while d > 0 {
        let step = walls_of_alcove(rs, &cur, p)?
            .into_iter()
            .filter(|w| {
                w.side == WallSide::Lower && w.n != 0 && !levi.levi_roots().contains(&w.root)
            })
            .map(|w| {
                let t = w.reflection();
                (t, t.dot(rs, p, &cur))
            })
            .next()
            .ok_or_else(|| Error::CheckFailed(cur.clone()))?;
        descent.push(step.0);
        cur = step.1;
        d -= 1;
    }
    if !cur.is_zero() {
        return Err(Error::CheckFailed(cur));
    }

    // ν = t_1 ⋯ t_k · λ★, and s_i = x_{i-1}⁻¹ t_{k-i+1} x_{i-1} with
    // x_{i-1} = s_1 ⋯ s_{i-1}.
    let sp = levi.sp();
    let mut letters = Vec::with_capacity(descent.len());
    let mut x = AffineElt::identity(rs.rank, p);
    for t in descent.iter().rev() {
        let conj = x.inverse().compose(&t.to_elt(rs, p)).compose(&x);
        let s = *sp
            .iter()
            .find(|s| s.to_elt(rs, p) == conj)
            .ok_or_else(|| Error::CheckFailed(nu.clone()))?;
        x = x.compose(&s.to_elt(rs, p));
        letters.push(s);
    }
    let word = ReducedWord::certify(&letters, levi)?;
    if word.target() != nu || !word.all_certified() {
        return Err(Error::CheckFailed(nu.clone()));
    }
    Ok(word)
}

/// `Θ_{s_n} ⋯ Θ_{s_1}` applied to `[T(λ★)] = N_I(λ★)·[Z̄(λ★)]`.
pub fn theta_product_char(letters: &[Reflection], levi: &LeviDatum) -> Result<GVector> {
    let rs = levi.root_system();
    let zero = rs.zero();
    let n0 = levi.n_i(&zero)? as i64;
    let mut v = GVector::from_terms(Basis::Zbar, zero.clone(), [(zero, n0)]);
    for s in letters {
        let setup = choose_mu(rs, s, levi.p())?;
        v = theta_s(&v, &setup, levi)?;
    }
    Ok(v)
}

/// Checks that the Θ-product for `ν` has `∇`-coefficient one at `ν` and
/// support otherwise strictly lower in `d`. Returns the remaining character
/// (in the `Z̄` basis) after removing `[∇(ν)]`.
pub fn tilt_summand_check(word: &ReducedWord, levi: &LeviDatum) -> Result<GVector> {
    let rs = levi.root_system();
    let p = levi.p();
    let nu = levi.orbit_rep(word.target());
    let ch = theta_product_char(&word.letters, levi)?;
    let nabla = convert_basis(&ch, Basis::Nabla, levi)?;
    if !nabla.coeff(&nu).is_one() {
        return Err(Error::CheckFailed(nu));
    }
    let top = d_value(rs, &nu, p)?;
    for label in nabla.support() {
        if label != &nu && d_value(rs, label, p)? >= top {
            return Err(Error::CheckFailed(label.clone()));
        }
    }
    let top_class = convert_basis(
        &GVector::basis_class(Basis::Nabla, ch.block.clone(), nu),
        Basis::Zbar,
        levi,
    )?;
    ch.minus(&top_class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionTag {
    Double,
    OnePlusLower,
}

impl DecompositionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionTag::Double => "double",
            DecompositionTag::OnePlusLower => "one-plus-lower",
        }
    }
}

/// The decomposition of `Θ_s(T(ν))` into indecomposable tilting classes, as
/// far as it is determined: the certain summands, and for the
/// `one-plus-lower` case a remainder whose summands are indexed by labels of
/// `d` strictly below `remainder_d_bound`, with unknown multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub tag: DecompositionTag,
    pub certain: Vec<OrbitLabel>,
    pub remainder_d_bound: Option<i64>,
}

pub fn refl_transwall_decompose(
    nu: &Weight,
    s: &Reflection,
    levi: &LeviDatum,
) -> Result<Decomposition> {
    let rs = levi.root_system();
    let p = levi.p();
    let w = levi.element_for(nu, &rs.zero())?;
    let s_elt = s.to_elt(rs, p);
    if !levi.sp().contains(s) {
        return Err(Error::NotInSp(s.to_string()));
    }
    let double = Decomposition {
        tag: DecompositionTag::Double,
        certain: vec![nu.clone(), nu.clone()],
        remainder_d_bound: None,
    };
    if levi.in_wip(&w.conjugate(&s_elt)) {
        return Ok(double);
    }
    let wsw = w.conjugate(&s_elt);
    let t = Reflection::from_elt(rs, &wsw).expect("conjugate of a reflection");
    match single_reflection_compare(rs, &t, nu, p)? {
        Relation::Below => Ok(double),
        Relation::Above => {
            let upper = w.compose(&s_elt).dot(&rs.zero());
            Ok(Decomposition {
                tag: DecompositionTag::OnePlusLower,
                certain: vec![levi.orbit_rep(&upper)],
                remainder_d_bound: Some(d_value(rs, &upper, p)?),
            })
        }
    }
}

/// Asserted characters of indecomposable tilting objects, keyed by their
/// top label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TiltingTable {
    pub entries: BTreeMap<OrbitLabel, GVector>,
}

/// Sort key for peeling: `d` at regular labels, then `<ν+ρ, 2ρ^vee>`.
fn peel_key(rs: &RootSystem, p: i64, label: &Weight) -> (i64, i64) {
    let height: i64 = (0..rs.num_positive_roots())
        .map(|i| rs.pair_rho(label, i))
        .sum();
    match d_value(rs, label, p) {
        Ok(d) => (d, height),
        Err(_) => (i64::MIN, height),
    }
}

fn top_label(rs: &RootSystem, p: i64, v: &GVector) -> Option<OrbitLabel> {
    let all_regular = v.support().all(|l| is_regular(rs, l, p));
    v.support()
        .max_by_key(|l| {
            let (d, h) = peel_key(rs, p, l);
            if all_regular {
                (d, h)
            } else {
                (h, 0)
            }
        })
        .cloned()
}

impl TiltingTable {
    /// Builds a table from characters, each keyed by its maximal label.
    pub fn from_characters(chars: Vec<GVector>, levi: &LeviDatum) -> Result<TiltingTable> {
        let rs = levi.root_system();
        let mut entries = BTreeMap::new();
        for ch in chars {
            let top = top_label(rs, levi.p(), &ch)
                .ok_or_else(|| Error::InvalidTable("empty character".into()))?;
            if entries.insert(top.clone(), ch).is_some() {
                return Err(Error::InvalidTable(format!(
                    "two entries with top label {top}"
                )));
            }
        }
        let table = TiltingTable { entries };
        table.validate(levi)?;
        Ok(table)
    }

    /// Reads a JSON array of [`GVector`]s.
    pub fn from_json(text: &str, levi: &LeviDatum) -> Result<TiltingTable> {
        let raw: Vec<serde_json::Value> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("tilting table JSON: {e}")))?;
        let chars = raw
            .into_iter()
            .map(GVector::from_json_value)
            .collect::<Result<Vec<_>>>()?;
        TiltingTable::from_characters(chars, levi)
    }

    pub fn to_json(&self) -> String {
        let items: Vec<String> = self.entries.values().map(GVector::to_json).collect();
        format!("[{}]", items.join(","))
    }

    /// Each entry has `∇`-coefficient one at its top label, and every other
    /// label in its support lies `↑`-below the top.
    pub fn validate(&self, levi: &LeviDatum) -> Result<()> {
        let rs = levi.root_system();
        for (top, ch) in &self.entries {
            let nabla = convert_basis(ch, Basis::Nabla, levi)?;
            if !nabla.coeff(top).is_one() {
                return Err(Error::InvalidTable(format!(
                    "coefficient at top label {top} is not 1"
                )));
            }
            for l in nabla.support() {
                if !uparrow_leq(rs, l, top, levi.p()) {
                    return Err(Error::InvalidTable(format!(
                        "label {l} in the entry for {top} is not below it"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Writes `ch` as a nonnegative integer combination of table entries by
/// repeatedly removing the entry at the highest remaining label.
pub fn greedy_peel(
    ch: &GVector,
    table: &TiltingTable,
    levi: &LeviDatum,
) -> Result<BTreeMap<OrbitLabel, u64>> {
    let rs = levi.root_system();
    let p = levi.p();
    let mut rest = convert_basis(ch, Basis::Nabla, levi)?;
    let mut out = BTreeMap::new();
    while let Some(top) = top_label(rs, p, &rest) {
        let c = rest.coeff(&top);
        if c.is_negative() || !c.is_integer() {
            return Err(Error::PeelFailed(top));
        }
        let entry = table
            .entries
            .get(&top)
            .ok_or_else(|| Error::MissingEntry(top.clone()))?;
        let mut entry = convert_basis(entry, Basis::Nabla, levi)?;
        entry.block = rest.block.clone();
        rest = rest.minus(&entry.scaled(&c))?;
        if let Some((l, _)) = rest.terms.iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::PeelFailed(l.clone()));
        }
        let m: u64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::PeelFailed(top.clone()))?;
        *out.entry(top).or_insert(0) += m;
    }
    Ok(out)
}

/// `(dim Hom(Δ(ν), M), dim Hom(Δ̄(ν), M))`.
pub fn section_sizes_for_hom_bases(
    nu: &Weight,
    m: &GVector,
    levi: &LeviDatum,
) -> Result<(u64, u64)> {
    let nabla = convert_basis(m, Basis::Nabla, levi)?;
    nabla.check_nonnegative_integral()?;
    Ok((
        hom_dim(HomKind::Delta, nu, &nabla, levi)?,
        hom_dim(HomKind::Deltabar, nu, &nabla, levi)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn a1(levi: &[usize]) -> LeviDatum {
        LeviDatum::new(Arc::new(RootSystem::from_spec("A1").unwrap()), levi, 5).unwrap()
    }
    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }
    fn z(terms: &[(i64, i64)]) -> GVector {
        GVector::from_terms(
            Basis::Zbar,
            w(&[0]),
            terms.iter().map(|&(l, c)| (w(&[l]), c)),
        )
    }
    const S0: Reflection = Reflection { root: 0, n: 0 };
    const S5: Reflection = Reflection { root: 0, n: 1 };

    #[test]
    fn domexp_examples() {
        let e = a1(&[]);
        assert!(domexp_word(&w(&[0]), &e).unwrap().is_empty());
        assert_eq!(domexp_word(&w(&[8]), &e).unwrap().letters, vec![S5]);
        assert_eq!(domexp_word(&w(&[10]), &e).unwrap().letters, vec![S5, S0]);
        assert_eq!(
            domexp_word(&w(&[8]), &a1(&[0])),
            Err(Error::NotInCI(w(&[8])))
        );
        assert_eq!(
            domexp_word(&w(&[-2]), &e),
            Err(Error::NotDominant(w(&[-2])))
        );
        assert_eq!(domexp_word(&w(&[4]), &e), Err(Error::NotRegular(w(&[4]))));
    }

    #[test]
    fn word_syntax() {
        let rs = RootSystem::from_spec("A1").unwrap();
        assert_eq!(parse_word("5:1,0:1", &rs, 5).unwrap(), vec![S5, S0]);
        assert!(parse_word("3:1", &rs, 5).is_err());
        assert!(parse_word("5:2", &rs, 5).is_err());
        let word = ReducedWord::certify(&[S5, S0], &a1(&[])).unwrap();
        assert_eq!(word.to_word_string(5), "5:1,0:1");
        assert!(word.all_certified());
    }

    #[test]
    fn theta_product_examples() {
        let e = a1(&[]);
        assert_eq!(theta_product_char(&[], &e).unwrap(), z(&[(0, 1)]));
        assert_eq!(theta_product_char(&[], &a1(&[0])).unwrap(), z(&[(0, 2)]));
        assert_eq!(theta_product_char(&[S5], &e).unwrap(), z(&[(0, 1), (8, 1)]));
        assert_eq!(
            theta_product_char(&[S5, S0], &e).unwrap(),
            z(&[(0, 1), (-2, 1), (8, 1), (10, 1)])
        );
    }

    #[test]
    fn tilt_summand_examples() {
        let e = a1(&[]);
        let empty = domexp_word(&w(&[0]), &e).unwrap();
        assert!(tilt_summand_check(&empty, &e).unwrap().is_zero());
        let word = domexp_word(&w(&[8]), &e).unwrap();
        assert_eq!(tilt_summand_check(&word, &e).unwrap(), z(&[(0, 1)]));
    }

    #[test]
    fn decomposition_examples() {
        let l = a1(&[0]);
        let d = refl_transwall_decompose(&w(&[0]), &S5, &l).unwrap();
        assert_eq!(d.tag, DecompositionTag::Double);
        let e = a1(&[]);
        let up = refl_transwall_decompose(&w(&[8]), &S5, &e).unwrap();
        assert_eq!(up.tag, DecompositionTag::Double);
        let low = refl_transwall_decompose(&w(&[0]), &S5, &e).unwrap();
        let mid = refl_transwall_decompose(&w(&[8]), &S0, &e).unwrap();
        assert_eq!(mid.certain, vec![w(&[10])]);
        assert_eq!(low.tag, DecompositionTag::OnePlusLower);
        assert_eq!(low.certain, vec![w(&[8])]);
        assert_eq!(low.remainder_d_bound, Some(1));
    }

    #[test]
    fn peel_examples() {
        let e = a1(&[]);
        let table =
            TiltingTable::from_characters(vec![z(&[(8, 1), (0, 1)]), z(&[(0, 1)])], &e).unwrap();
        let peeled = greedy_peel(&z(&[(0, 1), (8, 1)]), &table, &e).unwrap();
        assert_eq!(peeled, BTreeMap::from([(w(&[8]), 1)]));
        let peeled = greedy_peel(&z(&[(0, 3), (8, 3)]), &table, &e).unwrap();
        assert_eq!(peeled, BTreeMap::from([(w(&[8]), 3)]));
        assert_eq!(
            greedy_peel(&z(&[(10, 1)]), &table, &e),
            Err(Error::MissingEntry(w(&[10])))
        );
        assert_eq!(
            greedy_peel(&z(&[(8, 1)]), &table, &e),
            Err(Error::PeelFailed(w(&[0])))
        );
        assert!(TiltingTable::from_characters(vec![z(&[(8, 2)])], &e).is_err());
        let round = TiltingTable::from_json(&table.to_json(), &e).unwrap();
        assert_eq!(round, table);
    }

    #[test]
    fn hom_basis_sizes() {
        let e = a1(&[]);
        let nabla = |l: i64| GVector::from_terms(Basis::Nabla, w(&[0]), [(w(&[l]), 1)]);
        assert_eq!(
            section_sizes_for_hom_bases(&w(&[8]), &nabla(8), &e).unwrap(),
            (1, 1)
        );
        assert_eq!(
            section_sizes_for_hom_bases(&w(&[0]), &nabla(0), &a1(&[0])).unwrap(),
            (2, 1)
        );
        let zero = GVector::zero(Basis::Nabla, w(&[0]));
        assert_eq!(
            section_sizes_for_hom_bases(&w(&[0]), &zero, &e).unwrap(),
            (0, 0)
        );
    }
}
