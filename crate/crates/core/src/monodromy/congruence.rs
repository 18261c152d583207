use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::picard::Convention;
use super::sl2::SL2Mat;
use crate::arith::JsonInt;
use crate::{Error, Result};

/// `Γ_1(3)` in the given basis convention: `b ≡ 0` (standard) or `c ≡ 0` (repbas), and
/// `a ≡ d ≡ 1 (mod 3)`.
pub fn gamma1_membership(m: &SL2Mat, convention: Convention) -> bool {
    let [a, b, c, d] = m.reduce(3);
    let off = match convention {
        Convention::Standard => b,
        Convention::Repbas => c,
    };
    off == 0 && a == 1 && d == 1
}

/// A letter of a word in the monodromy generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    #[serde(rename = "rho_edge")]
    Edge,
    #[serde(rename = "rho_edge^-1")]
    EdgeInv,
    #[serde(rename = "rho_trc")]
    Trc,
    #[serde(rename = "rho_trc^-1")]
    TrcInv,
}

/// Left multiplier acting on the coset representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Multiplier {
    S,
    T,
    #[serde(rename = "T^-1")]
    TInv,
}

impl Multiplier {
    pub const ALL: [Multiplier; 3] = [Multiplier::T, Multiplier::TInv, Multiplier::S];

    pub fn matrix(self) -> SL2Mat {
        match self {
            Multiplier::S => SL2Mat::s(),
            Multiplier::T => SL2Mat::t(),
            Multiplier::TInv => SL2Mat::t().inverse(),
        }
    }
}

/// `X · r_i = sign · r_j · w` with `w` a word in the generators.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub multiplier: Multiplier,
    pub from: usize,
    pub to: usize,
    pub word: Vec<Letter>,
    pub sign: i64,
    pub holds: bool,
}

pub const REPRESENTATIVE_NAMES: [&str; 4] = ["1", "T", "T^-1", "S"];

/// Closure of `{1, T, T^-1, S}` under left multiplication, with the mod-3 index computation.
#[derive(Clone, Debug, Serialize)]
pub struct CosetCertificate {
    pub generators: Vec<SL2Mat>,
    pub representatives: Vec<SL2Mat>,
    pub witnesses: Vec<Witness>,
    pub generators_in_gamma1: bool,
    pub sl2_f3_order: usize,
    pub image_order: usize,
    pub gamma1_image_order: usize,
    pub gamma1_index: usize,
    pub closure_holds: bool,
    /// `{1, T, T^-1, S} · {1, S²}` are pairwise inequivalent modulo `Γ_1(3)`.
    pub eight_inequivalent: bool,
    pub relations_hold: bool,
    pub failures: Vec<String>,
}

fn witness_table() -> Vec<(Multiplier, usize, usize, Vec<Letter>, i64)> {
    use Letter::*;
    use Multiplier::*;
    vec![
        (T, 0, 1, vec![], 1),
        (T, 1, 2, vec![EdgeInv], 1),
        (T, 2, 0, vec![], 1),
        (T, 3, 3, vec![TrcInv], 1),
        (TInv, 0, 2, vec![], 1),
        (TInv, 1, 0, vec![], 1),
        (TInv, 2, 1, vec![Edge], 1),
        (TInv, 3, 3, vec![Trc], 1),
        (S, 0, 3, vec![], 1),
        (S, 1, 2, vec![Trc], 1),
        (S, 2, 1, vec![TrcInv], -1),
        (S, 3, 0, vec![], -1),
    ]
}

fn word_matrix(word: &[Letter], edge: &SL2Mat, trc: &SL2Mat) -> SL2Mat {
    word.iter().fold(SL2Mat::identity(), |acc, l| {
        let m = match l {
            Letter::Edge => edge.clone(),
            Letter::EdgeInv => edge.inverse(),
            Letter::Trc => trc.clone(),
            Letter::TrcInv => trc.inverse(),
        };
        &acc * &m
    })
}

/// All 24 elements of `SL_2(F_3)`.
pub fn sl2_f3() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 3 * 3 - b * c) % 3 == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn mul_f3(x: [u32; 4], y: [u32; 4]) -> [u32; 4] {
    [(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3, (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3]
}

/// Subgroup of `SL_2(F_3)` generated by the reductions of `gens`.
pub fn generated_mod3(gens: &[SL2Mat]) -> BTreeSet<[u32; 4]> {
    let gens: Vec<[u32; 4]> = gens.iter().map(|g| g.reduce(3)).collect();
    let mut seen = BTreeSet::from([[1, 0, 0, 1]]);
    let mut queue = VecDeque::from([[1, 0, 0, 1]]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = mul_f3(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

impl CosetCertificate {
    /// `edge`, `trc` are the monodromy generators in the standard basis.
    pub fn build(edge: &SL2Mat, trc: &SL2Mat) -> CosetCertificate {
        let conv = Convention::Standard;
        let (t, s) = (SL2Mat::t(), SL2Mat::s());
        let representatives = vec![SL2Mat::identity(), t.clone(), t.inverse(), s.clone()];
        let mut failures = Vec::new();

        let generators_in_gamma1 = gamma1_membership(edge, conv) && gamma1_membership(trc, conv);
        if !generators_in_gamma1 {
            failures.push("a generator is not in Γ_1(3)".to_string());
        }

        let all = sl2_f3();
        let image = generated_mod3(&[edge.clone(), trc.clone()]);
        let gamma1_image: Vec<&[u32; 4]> = all.iter().filter(|x| x[1] == 0 && x[0] == 1 && x[3] == 1).collect();
        let gamma1_index = all.len() / gamma1_image.len().max(1);
        let image_matches = image.len() == gamma1_image.len() && gamma1_image.iter().all(|x| image.contains(*x));
        if !image_matches {
            failures.push("reduction of the generated group is not the image of Γ_1(3)".to_string());
        }

        let mut witnesses = Vec::new();
        for (multiplier, from, to, word, sign) in witness_table() {
            let lhs = &multiplier.matrix() * &representatives[from];
            let rhs = &representatives[to] * &word_matrix(&word, edge, trc);
            let rhs = if sign < 0 { rhs.neg() } else { rhs };
            let holds = lhs == rhs;
            if !holds {
                failures.push(format!(
                    "{:?}·{} ≠ {}{}·{:?}",
                    multiplier,
                    REPRESENTATIVE_NAMES[from],
                    if sign < 0 { "-" } else { "" },
                    REPRESENTATIVE_NAMES[to],
                    word
                ));
            }
            witnesses.push(Witness { multiplier, from, to, word, sign, holds });
        }
        let closure_holds = witnesses.iter().all(|w| w.holds)
            && Multiplier::ALL.iter().all(|&m| (0..4).all(|i| witnesses.iter().filter(|w| w.multiplier == m && w.from == i).count() == 1));

        let s2 = s.pow(2);
        let eight: Vec<SL2Mat> = representatives.iter().flat_map(|r| [r.clone(), r * &s2]).collect();
        let eight_inequivalent = (0..8).all(|i| (0..8).all(|j| i == j || !gamma1_membership(&(&eight[i].inverse() * &eight[j]), conv)));
        if !eight_inequivalent {
            failures.push("two of the eight representatives are equivalent".to_string());
        }
        let relations_hold = s.pow(4).is_identity() && (&s * &t).pow(6).is_identity() && &s2 * &t == &t * &s2;
        if !relations_hold {
            failures.push("defining relations of SL_2(Z) fail".to_string());
        }

        CosetCertificate {
            generators: vec![edge.clone(), trc.clone()],
            representatives,
            witnesses,
            generators_in_gamma1,
            sl2_f3_order: all.len(),
            image_order: image.len(),
            gamma1_image_order: gamma1_image.len(),
            gamma1_index,
            closure_holds,
            eight_inequivalent,
            relations_hold,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.closure_holds && self.gamma1_index == 8 && self.sl2_f3_order == 24 && self.image_order == 3
    }

    /// Permutation of the four projective cosets under left multiplication by `m`.
    pub fn permutation(&self, m: Multiplier) -> Vec<usize> {
        let mut p = vec![usize::MAX; 4];
        for w in self.witnesses.iter().filter(|w| w.multiplier == m) {
            p[w.from] = w.to;
        }
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cusp {
    /// `r^{-1} · ∞` for the first representative `r` in the orbit, as `[p, q]` (`[1, 0]` is ∞).
    #[serde(serialize_with = "serialize_pair")]
    pub point: (BigInt, BigInt),
    pub width: usize,
    pub orbit: Vec<usize>,
}

fn serialize_pair<S: serde::Serializer>(p: &(BigInt, BigInt), s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    [JsonInt(&p.0), JsonInt(&p.1)].serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspData {
    pub cusps: Vec<Cusp>,
    pub projective_index: usize,
}

impl Cusp {
    pub fn point_string(&self) -> String {
        let (p, q) = &self.point;
        if *q == BigInt::from(0) {
            "∞".into()
        } else if *q == BigInt::from(1) {
            p.to_string()
        } else {
            format!("{p}/{q}")
        }
    }
}

/// `T`-orbits on the projective cosets.
pub fn cusp_data(c: &CosetCertificate) -> Result<CuspData> {
    if !c.closure_holds {
        return Err(Error::Certificate("coset closure failed".into()));
    }
    let t = c.permutation(Multiplier::T);
    let mut seen = [false; 4];
    let mut cusps = Vec::new();
    for start in 0..4 {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut x = t[start];
        while x != start {
            orbit.push(x);
            seen[x] = true;
            x = t[x];
        }
        let (p, q) = c.representatives[start].inverse().act_on_cusp(&BigInt::from(1), &BigInt::from(0));
        cusps.push(Cusp { point: (p, q), width: orbit.len(), orbit });
    }
    Ok(CuspData { projective_index: c.representatives.len(), cusps })
}

/// Fixed cosets of the order-3 element `S·T`.
#[derive(Clone, Debug, Serialize)]
pub struct EllipticData {
    pub permutation: Vec<usize>,
    pub fixed: usize,
    pub orbit_sizes: Vec<usize>,
    /// `(S T)^3 = ±1`.
    pub cube_sign: i64,
}

pub fn elliptic_count(c: &CosetCertificate) -> Result<EllipticData> {
    if !c.closure_holds {
        return Err(Error::Certificate("coset closure failed".into()));
    }
    let (s, t) = (c.permutation(Multiplier::S), c.permutation(Multiplier::T));
    let permutation: Vec<usize> = (0..4).map(|i| s[t[i]]).collect();
    let fixed = (0..4).filter(|&i| permutation[i] == i).count();
    let mut seen = [false; 4];
    let mut orbit_sizes = Vec::new();
    for start in 0..4 {
        if seen[start] {
            continue;
        }
        let mut x = start;
        let mut n = 0;
        while !seen[x] {
            seen[x] = true;
            x = permutation[x];
            n += 1;
        }
        orbit_sizes.push(n);
    }
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let st = &SL2Mat::s() * &SL2Mat::t();
    let cube_sign = st.pow(3).sign_relative_to(&SL2Mat::identity()).unwrap_or(0);
    Ok(EllipticData { permutation, fixed, orbit_sizes, cube_sign })
}

/// Every word of length at most `depth` in the generators and their inverses passes the membership test.
pub fn words_in_gamma1(edge: &SL2Mat, trc: &SL2Mat, depth: usize, convention: Convention) -> (usize, bool) {
    let gens = [edge.clone(), edge.inverse(), trc.clone(), trc.inverse()];
    let mut layer = vec![SL2Mat::identity()];
    let mut count = 1;
    let mut ok = gamma1_membership(&layer[0], convention);
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * 4);
        for w in &layer {
            for g in &gens {
                let m = w * g;
                ok &= gamma1_membership(&m, convention);
                next.push(m);
            }
        }
        count += next.len();
        layer = next;
    }
    (count, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> (SL2Mat, SL2Mat) {
        (SL2Mat::new(1, -3, 0, 1).unwrap(), SL2Mat::new(1, 0, 1, 1).unwrap())
    }

    #[test]
    fn membership_examples() {
        let (e, t) = gens();
        assert!(gamma1_membership(&e, Convention::Standard));
        assert!(gamma1_membership(&t, Convention::Standard));
        assert!(!gamma1_membership(&SL2Mat::identity().neg(), Convention::Standard));
        assert!(gamma1_membership(&SL2Mat::t(), Convention::Repbas));
        assert!(!gamma1_membership(&SL2Mat::s(), Convention::Repbas));
    }

    #[test]
    fn certificate_passes() {
        let (e, t) = gens();
        let c = CosetCertificate::build(&e, &t);
        assert!(c.passed(), "{:?}", c.failures);
        assert_eq!((c.sl2_f3_order, c.image_order, c.gamma1_index), (24, 3, 8));
    }

    #[test]
    fn wrong_generators_fail() {
        let c = CosetCertificate::build(&SL2Mat::t(), &SL2Mat::s());
        assert!(!c.passed());
        assert!(!c.failures.is_empty());
    }

    #[test]
    fn cusps_and_elliptic_point() {
        let (e, t) = gens();
        let c = CosetCertificate::build(&e, &t);
        let d = cusp_data(&c).unwrap();
        let widths: Vec<usize> = d.cusps.iter().map(|c| c.width).collect();
        assert_eq!(widths, vec![3, 1]);
        assert_eq!(d.cusps[0].orbit, vec![0, 1, 2]);
        assert_eq!(d.cusps[1].orbit, vec![3]);
        assert_eq!(d.cusps[0].point_string(), "∞");
        assert_eq!(d.cusps[1].point_string(), "0");
        let el = elliptic_count(&c).unwrap();
        assert_eq!(el.fixed, 1);
        assert_eq!(el.orbit_sizes, vec![3, 1]);
        assert_eq!(el.permutation, vec![2, 1, 3, 0]);
    }

    #[test]
    fn generated_words_stay_in_gamma1() {
        let (e, t) = gens();
        let (n, ok) = words_in_gamma1(&e, &t, 6, Convention::Standard);
        assert!(ok);
        assert_eq!(n, (0..=6).map(|k| 4usize.pow(k)).sum::<usize>());
    }

    #[test]
    fn conventions_agree() {
        let (e, t) = gens();
        for m in [e, t] {
            assert_eq!(gamma1_membership(&m, Convention::Standard), gamma1_membership(&Convention::Repbas.convert(&m), Convention::Repbas));
        }
    }
}
