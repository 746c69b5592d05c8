//! Free wreath product presentations and the isomorphism checks for
//! quantum isometry groups of free powers of Z_4.
//!
//! One side is the wreath algebra on letters U_1..U_2n and a magic
//! unitary (t_ij); the other is the fundamental-matrix algebra of
//! Z_4 * ... * Z_4 presented by the simplified target relations. The
//! generator substitutions eta and eta' are verified as mutually inverse
//! *-morphisms compatible with the coproducts at generator level, all by
//! bounded-degree reduction.

use crate::algebra::{Alphabet, Letter, NcPoly, RelationStore, SaturateConfig};
use crate::scalar::rat;
use crate::{Poly, Rat};
use serde::Serialize;

/// Wreath-side alphabet: U_1..U_2n then the self-adjoint t_ij.
pub fn wreath_alphabet(n: usize) -> Alphabet {
    let mut names = Vec::new();
    for l in 1..=2 * n {
        names.push((format!("U{l}"), false));
    }
    for i in 1..=n {
        for j in 1..=n {
            names.push((format!("t{i}{j}"), true));
        }
    }
    Alphabet::plain(names)
}

/// Letter U_l (1-based l).
pub fn u_letter(n: usize, l: usize, star: bool) -> Letter {
    debug_assert!(l >= 1 && l <= 2 * n);
    Letter::new(l - 1, star)
}

/// Letter t_ij (1-based).
pub fn t_letter(n: usize, i: usize, j: usize) -> Letter {
    Letter::new(2 * n + (i - 1) * n + (j - 1), false)
}

/// Defining relations of Q(Z_4) *_w C(S_n^+): per copy the Q(Z_4)
/// relations on (U_{2i-1}, U_{2i}), the magic unitary relations on t, and
/// commutation of copy generators with their magic-unitary row.
pub fn wreath_relations(n: usize) -> Vec<Poly> {
    let mono = |ls: Vec<Letter>| NcPoly::monomial(ls);
    let mut out: Vec<Poly> = Vec::new();
    for i in 1..=n {
        let u = u_letter(n, 2 * i - 1, false);
        let us = u_letter(n, 2 * i - 1, true);
        let v = u_letter(n, 2 * i, false);
        let vs = u_letter(n, 2 * i, true);
        out.push(mono(vec![u, us]).add(&mono(vec![v, vs])).sub(&NcPoly::one()));
        out.push(mono(vec![u, v]).add(&mono(vec![v, u])));
        let uu_vv = |w: Letter| {
            mono(vec![u, u, w]).add(&mono(vec![v, v, w]))
        };
        out.push(NcPoly::letter(us).sub(&uu_vv(u)));
        out.push(NcPoly::letter(vs).sub(&uu_vv(v)));
    }
    for i in 1..=n {
        for j in 1..=n {
            let t = t_letter(n, i, j);
            out.push(mono(vec![t, t]).sub(&NcPoly::letter(t)));
        }
    }
    for j in 1..=n {
        let mut row = NcPoly::constant(rat(-1));
        let mut col = NcPoly::constant(rat(-1));
        for i in 1..=n {
            row = row.add(&NcPoly::letter(t_letter(n, i, j)));
            col = col.add(&NcPoly::letter(t_letter(n, j, i)));
        }
        out.push(row);
        out.push(col);
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if j != k {
                    out.push(mono(vec![t_letter(n, i, j), t_letter(n, i, k)]));
                    out.push(mono(vec![t_letter(n, j, i), t_letter(n, k, i)]));
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let t = t_letter(n, i, j);
            for l in [2 * i - 1, 2 * i] {
                let u = u_letter(n, l, false);
                out.push(mono(vec![u, t]).sub(&mono(vec![t, u])));
            }
        }
    }
    out.retain(|p| !p.is_zero());
    out
}

/// The simplified target relations over the fundamental-matrix symbols of
/// Z_s^(*n). Exact family for s = 4; other finite s get the generic
/// normal-partial-isometry family with u* = u^(s-1), flagged as a caveat.
#[derive(Debug, Clone)]
pub struct TargetRelationSet {
    pub s: u32,
    pub n: usize,
    pub alphabet: Alphabet,
    pub relations: Vec<Poly>,
    pub caveat: bool,
}

/// Matrix alphabet of Z_s^(*n) (all generators non-involutive for s > 2).
pub fn free_power_alphabet(n: usize) -> Alphabet {
    let inv: Vec<usize> = (0..2 * n).map(|i| i ^ 1).collect();
    Alphabet::fundamental(&inv)
}

/// Symbol A_{i, c} (0-based row i < n, column c < 2n).
pub fn a_letter(alphabet: &Alphabet, i: usize, c: usize, star: bool) -> Letter {
    let base = alphabet.entry(2 * i, c);
    if star {
        alphabet.adjoint_letter(base)
    } else {
        base
    }
}

pub fn target_relations(s: u32, n: usize) -> TargetRelationSet {
    let alphabet = free_power_alphabet(n);
    let a = |i: usize, c: usize, st: bool| a_letter(&alphabet, i, c, st);
    let mono = |ls: Vec<Letter>| NcPoly::<Rat>::monomial(ls);
    let mut relations: Vec<Poly> = Vec::new();
    let caveat = s != 4;

    // row sums: sum_c A_ic A_ic* = 1
    for i in 0..n {
        let mut p = NcPoly::constant(rat(-1));
        for c in 0..2 * n {
            p = p.add(&mono(vec![a(i, c, false), a(i, c, true)]));
        }
        relations.push(p);
    }
    // paired-column sums: sum_j (A_j(2i) A* + A_j(2i+1) A*) = 1
    for i in 0..n {
        let mut p = NcPoly::constant(rat(-1));
        for j in 0..n {
            p = p.add(&mono(vec![a(j, 2 * i, false), a(j, 2 * i, true)]));
            p = p.add(&mono(vec![a(j, 2 * i + 1, false), a(j, 2 * i + 1, true)]));
        }
        relations.push(p);
    }
    // same-row cross-block annihilation
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                for x in [2 * j, 2 * j + 1] {
                    for y in [2 * k, 2 * k + 1] {
                        relations.push(mono(vec![a(i, x, false), a(i, y, false)]));
                    }
                }
            }
        }
    }
    // same-column cross-row annihilation
    for c in 0..2 * n {
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    relations.push(mono(vec![a(j, c, false), a(k, c, false)]));
                }
            }
        }
    }
    if s == 4 {
        // cubic star identities and anticommutation per block
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (2 * j, 2 * j + 1);
                let cube = |target: usize| {
                    mono(vec![a(i, x, false), a(i, x, false), a(i, target, false)]).add(&mono(
                        vec![a(i, y, false), a(i, y, false), a(i, target, false)],
                    ))
                };
                relations.push(NcPoly::letter(a(i, x, true)).sub(&cube(x)));
                relations.push(NcPoly::letter(a(i, y, true)).sub(&cube(y)));
                relations.push(
                    mono(vec![a(i, x, false), a(i, y, false)])
                        .add(&mono(vec![a(i, y, false), a(i, x, false)])),
                );
            }
        }
    } else {
        // generic family: normality, partial isometry, u* = u^(s-1)
        for i in 0..n {
            for c in 0..2 * n {
                let x = a(i, c, false);
                let xs = a(i, c, true);
                relations.push(mono(vec![x, xs]).sub(&mono(vec![xs, x])));
                relations.push(mono(vec![x, xs, x]).sub(&NcPoly::letter(x)));
                let pow: Vec<Letter> = std::iter::repeat(x).take(s as usize - 1).collect();
                relations.push(NcPoly::letter(xs).sub(&mono(pow)));
            }
        }
    }
    relations.retain(|p| !p.is_zero());
    TargetRelationSet { s, n, alphabet, relations, caveat }
}

/// Generator substitution between alphabets; star images are adjoints of
/// the unstarred images, so the map is *-compatible by construction.
#[derive(Debug, Clone)]
pub struct SubstitutionMap {
    pub domain: Alphabet,
    pub codomain: Alphabet,
    pub images: Vec<Poly>,
}

impl SubstitutionMap {
    pub fn image_of_letter(&self, l: Letter) -> Poly {
        let base = &self.images[l.gen()];
        if l.starred() {
            base.adjoint(&self.codomain)
        } else {
            base.clone()
        }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = NcPoly::zero();
        for (mono, c) in p.terms() {
            let mut term = NcPoly::constant(c.clone());
            for &l in mono {
                term = term.mul(&self.image_of_letter(l));
            }
            out = out.add(&term);
        }
        out
    }
}

/// eta: A_{j(2i-1)} -> U_{2i-1} t_{ij}, A_{j(2i)} -> U_{2i} t_{ij}.
pub fn eta(n: usize) -> SubstitutionMap {
    let domain = free_power_alphabet(n);
    let codomain = wreath_alphabet(n);
    let mut images = vec![NcPoly::zero(); domain.gens.len()];
    for j in 0..n {
        for i in 0..n {
            for off in 0..2 {
                let l = a_letter(&domain, j, 2 * i + off, false);
                images[l.gen()] = NcPoly::monomial(vec![
                    u_letter(n, 2 * i + 1 + off, false),
                    t_letter(n, i + 1, j + 1),
                ]);
            }
        }
    }
    SubstitutionMap { domain, codomain, images }
}

/// eta': U_{2i-1} -> sum_j A_{j(2i-1)}, U_{2i} -> sum_j A_{j(2i)},
/// t_ij -> A_{j(2i-1)} A_{j(2i-1)}* + A_{j(2i)} A_{j(2i)}*.
pub fn eta_prime(n: usize) -> SubstitutionMap {
    let domain = wreath_alphabet(n);
    let codomain = free_power_alphabet(n);
    let a = |j: usize, c: usize, st: bool| a_letter(&codomain, j, c, st);
    let mut images = vec![NcPoly::zero(); domain.gens.len()];
    for i in 0..n {
        for off in 0..2 {
            let l = u_letter(n, 2 * i + 1 + off, false);
            let mut sum = NcPoly::zero();
            for j in 0..n {
                sum = sum.add(&NcPoly::letter(a(j, 2 * i + off, false)));
            }
            images[l.gen()] = sum;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let l = t_letter(n, i + 1, j + 1);
            let p = NcPoly::monomial(vec![a(j, 2 * i, false), a(j, 2 * i, true)]).add(
                &NcPoly::monomial(vec![a(j, 2 * i + 1, false), a(j, 2 * i + 1, true)]),
            );
            images[l.gen()] = p;
        }
    }
    SubstitutionMap { domain, codomain, images }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub certificates: Vec<String>,
    pub witnesses: Vec<String>,
}

fn saturated(alphabet: &Alphabet, rels: &[Poly], cfg: &SaturateConfig) -> RelationStore<Rat> {
    let mut store = RelationStore::new(alphabet.clone());
    for r in rels {
        store.add(r.clone(), cfg);
    }
    store.saturate(cfg);
    store
}

fn reduce_all(
    store: &RelationStore<Rat>,
    alphabet: &Alphabet,
    items: &[(String, Poly)],
    incomplete: bool,
) -> CheckOutcome {
    let mut certificates = Vec::new();
    let mut witnesses = Vec::new();
    for (label, q) in items {
        if store.reduces_to_zero(q) {
            certificates.push(format!("{label} -> 0"));
        } else {
            witnesses.push(format!("{label}: {}", store.reduce(q).render(alphabet)));
        }
    }
    let verdict = if witnesses.is_empty() {
        Verdict::True
    } else if incomplete {
        Verdict::Inconclusive
    } else {
        Verdict::False
    };
    CheckOutcome { verdict, certificates, witnesses }
}

/// Both generating sets reduce to zero against the saturation of the
/// other at the degree bound.
pub fn mutual_reduction_equiv(
    alphabet: &Alphabet,
    set_a: &[Poly],
    set_b: &[Poly],
    cfg: &SaturateConfig,
) -> CheckOutcome {
    let sat_a = saturated(alphabet, set_a, cfg);
    let sat_b = saturated(alphabet, set_b, cfg);
    let items_b: Vec<(String, Poly)> = set_b
        .iter()
        .enumerate()
        .map(|(i, q)| (format!("B[{i}] in <A>"), q.clone()))
        .collect();
    let items_a: Vec<(String, Poly)> = set_a
        .iter()
        .enumerate()
        .map(|(i, q)| (format!("A[{i}] in <B>"), q.clone()))
        .collect();
    let r1 = reduce_all(&sat_a, alphabet, &items_b, !sat_a.complete);
    let r2 = reduce_all(&sat_b, alphabet, &items_a, !sat_b.complete);
    let verdict = match (r1.verdict, r2.verdict) {
        (Verdict::True, Verdict::True) => Verdict::True,
        (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
        _ => Verdict::False,
    };
    CheckOutcome {
        verdict,
        certificates: [r1.certificates, r2.certificates].concat(),
        witnesses: [r1.witnesses, r2.witnesses].concat(),
    }
}

/// Every domain relation's image reduces to zero in the codomain's
/// saturated ideal.
pub fn check_homomorphism(
    map: &SubstitutionMap,
    domain_rels: &[Poly],
    codomain_rels: &[Poly],
    cfg: &SaturateConfig,
) -> CheckOutcome {
    let sat = saturated(&map.codomain, codomain_rels, cfg);
    let items: Vec<(String, Poly)> = domain_rels
        .iter()
        .enumerate()
        .map(|(i, q)| (format!("image of relation {i}"), map.apply(q)))
        .collect();
    reduce_all(&sat, &map.codomain, &items, !sat.complete)
}

/// (map_g o map_f)(x) - x reduces to zero for every domain generator x.
pub fn check_inverse(
    map_f: &SubstitutionMap,
    map_g: &SubstitutionMap,
    domain_rels: &[Poly],
    cfg: &SaturateConfig,
) -> CheckOutcome {
    let sat = saturated(&map_f.domain, domain_rels, cfg);
    let items: Vec<(String, Poly)> = (0..map_f.domain.gens.len())
        .map(|g| {
            let x = Letter::new(g, false);
            let round = map_g.apply(&map_f.image_of_letter(x));
            (
                format!("round trip of {}", map_f.domain.letter_name(x)),
                round.sub(&NcPoly::letter(x)),
            )
        })
        .collect();
    reduce_all(&sat, &map_f.domain, &items, !sat.complete)
}

/// Formal tensor sum of leg pairs.
pub type TensorPoly = Vec<(Poly, Poly)>;

fn tensor_mul(a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    let mut out = Vec::new();
    for (l1, r1) in a {
        for (l2, r2) in b {
            out.push((l1.mul(l2), r1.mul(r2)));
        }
    }
    out
}

fn tensor_apply(map: &SubstitutionMap, t: &TensorPoly) -> TensorPoly {
    t.iter().map(|(l, r)| (map.apply(l), map.apply(r))).collect()
}

fn tensor_star(alphabet: &Alphabet, t: &TensorPoly) -> TensorPoly {
    t.iter().map(|(l, r)| (l.adjoint(alphabet), r.adjoint(alphabet))).collect()
}

/// Coproduct images of single letters on the matrix side:
/// Delta(u_ij) = sum_b u_bj (x) u_ib.
pub fn matrix_coproduct(alphabet: &Alphabet, l: Letter) -> TensorPoly {
    let m = alphabet.matrix.as_ref().expect("matrix alphabet");
    let (i, j) = alphabet.gens[l.gen()].pos.expect("matrix letter");
    let mut out: TensorPoly = Vec::new();
    for b in 0..m.size {
        let (g1, s1) = m.entry[b][j];
        let (g2, s2) = m.entry[i][b];
        out.push((
            NcPoly::letter(Letter::new(g1, s1)),
            NcPoly::letter(Letter::new(g2, s2)),
        ));
    }
    if l.starred() {
        tensor_star(alphabet, &out)
    } else {
        out
    }
}

/// Free wreath coproduct on generators:
/// Delta(nu_i(a)) = sum_k nu_i(a_(1)) t_ik (x) nu_k(a_(2)) with the Q(Z_4)
/// Sweedler components, Delta(t_ij) = sum_l t_il (x) t_lj.
pub fn wreath_coproduct(n: usize, alphabet: &Alphabet, l: Letter) -> TensorPoly {
    let gen = l.gen();
    let mut out: TensorPoly = Vec::new();
    if gen < 2 * n {
        let i = gen / 2 + 1;
        let odd = gen % 2 == 0;
        for k in 1..=n {
            let t = t_letter(n, i, k);
            if odd {
                // Delta(u) = u (x) u + v* (x) v
                out.push((
                    NcPoly::monomial(vec![u_letter(n, 2 * i - 1, false), t]),
                    NcPoly::letter(u_letter(n, 2 * k - 1, false)),
                ));
                out.push((
                    NcPoly::monomial(vec![u_letter(n, 2 * i, true), t]),
                    NcPoly::letter(u_letter(n, 2 * k, false)),
                ));
            } else {
                // Delta(v) = v (x) u + u* (x) v
                out.push((
                    NcPoly::monomial(vec![u_letter(n, 2 * i, false), t]),
                    NcPoly::letter(u_letter(n, 2 * k - 1, false)),
                ));
                out.push((
                    NcPoly::monomial(vec![u_letter(n, 2 * i - 1, true), t]),
                    NcPoly::letter(u_letter(n, 2 * k, false)),
                ));
            }
        }
    } else {
        let rest = gen - 2 * n;
        let (i, j) = (rest / n + 1, rest % n + 1);
        for l2 in 1..=n {
            out.push((
                NcPoly::letter(t_letter(n, i, l2)),
                NcPoly::letter(t_letter(n, l2, j)),
            ));
        }
    }
    if l.starred() {
        tensor_star(alphabet, &out)
    } else {
        out
    }
}

/// Coproduct of an arbitrary polynomial given the coproduct on letters.
fn coproduct_poly(
    p: &Poly,
    delta: &dyn Fn(Letter) -> TensorPoly,
) -> TensorPoly {
    let mut out: TensorPoly = Vec::new();
    for (mono, c) in p.terms() {
        let mut term: TensorPoly = vec![(NcPoly::constant(c.clone()), NcPoly::one())];
        for &l in mono {
            term = tensor_mul(&term, &delta(l));
        }
        out.extend(term);
    }
    out
}

/// Canonical form of a tensor sum: reduce both legs, expand bilinearly,
/// and collect coefficients on monomial pairs.
fn tensor_canonical(
    t: &TensorPoly,
    store: &RelationStore<Rat>,
) -> Vec<(Vec<Letter>, Vec<Letter>, Rat)> {
    let mut acc: std::collections::BTreeMap<(Vec<Letter>, Vec<Letter>), Rat> =
        std::collections::BTreeMap::new();
    for (l, r) in t {
        let lr = store.reduce(l);
        let rr = store.reduce(r);
        for (ml, cl) in lr.terms() {
            for (mr, cr) in rr.terms() {
                let key = (ml.clone(), mr.clone());
                let e = acc.entry(key).or_insert_with(|| rat(0));
                *e = e.clone() + cl.clone() * cr.clone();
            }
        }
    }
    acc.into_iter()
        .filter(|(_, c)| *c != rat(0))
        .map(|((a, b), c)| (a, b, c))
        .collect()
}

/// (map (x) map)(Delta(x)) = Delta'(map(x)) for every domain generator,
/// compared termwise after leg reduction in the codomain ideal.
pub fn check_cqg_morphism_on_generators(
    map: &SubstitutionMap,
    delta_domain: &dyn Fn(Letter) -> TensorPoly,
    delta_codomain: &dyn Fn(Letter) -> TensorPoly,
    codomain_rels: &[Poly],
    cfg: &SaturateConfig,
) -> CheckOutcome {
    let sat = saturated(&map.codomain, codomain_rels, cfg);
    let mut certificates = Vec::new();
    let mut witnesses = Vec::new();
    for g in 0..map.domain.gens.len() {
        let x = Letter::new(g, false);
        let lhs = tensor_apply(map, &delta_domain(x));
        let rhs = coproduct_poly(&map.image_of_letter(x), delta_codomain);
        let (cl, cr) = (tensor_canonical(&lhs, &sat), tensor_canonical(&rhs, &sat));
        if cl == cr {
            certificates.push(format!(
                "coproduct square commutes on {}",
                map.domain.letter_name(x)
            ));
        } else {
            witnesses.push(format!(
                "coproduct square fails on {}",
                map.domain.letter_name(x)
            ));
        }
    }
    let verdict = if witnesses.is_empty() {
        Verdict::True
    } else if !sat.complete {
        Verdict::Inconclusive
    } else {
        Verdict::False
    };
    CheckOutcome { verdict, certificates, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SaturateConfig {
        SaturateConfig::default()
    }

    #[test]
    fn q_z4_relations_at_n_1() {
        let t = target_relations(4, 1);
        assert!(!t.caveat);
        // row sum, column sum, two cubic identities, anticommutation
        let rendered: Vec<String> =
            t.relations.iter().map(|p| p.render(&t.alphabet)).collect();
        assert!(rendered.iter().any(|s| s.contains("A A*") && s.contains("B B*")));
        assert!(rendered.iter().any(|s| s.contains("B B A") || s.contains("A A A")));
        assert!(rendered.iter().any(|s| s == "B A + A B" || s == "A B + B A"));
    }

    #[test]
    fn n_1_magic_unitary_degenerates() {
        let rels = wreath_relations(1);
        let a = wreath_alphabet(1);
        let sat = saturated(&a, &rels, &cfg());
        // t11 = 1
        let t = NcPoly::letter(t_letter(1, 1, 1)).sub(&NcPoly::one());
        assert!(sat.reduces_to_zero(&t));
    }

    #[test]
    fn eta_images_match_definition() {
        let n = 2;
        let e = eta(n);
        let l = a_letter(&e.domain, 0, 0, false); // A_{1,1}
        let img = e.image_of_letter(l);
        assert_eq!(img.render(&e.codomain), "U1 t11");
        let ep = eta_prime(n);
        let t = t_letter(n, 1, 2);
        let img = ep.image_of_letter(t);
        assert_eq!(img.render(&ep.codomain), "F F* + E E*");
        // eta'(U1) at n = 1 is the single summand A_{1,1}
        let ep1 = eta_prime(1);
        assert_eq!(ep1.image_of_letter(u_letter(1, 1, false)).render(&ep1.codomain), "A");
    }

    #[test]
    fn substitution_maps_are_star_compatible() {
        let n = 2;
        for map in [eta(n), eta_prime(n)] {
            let mut state = 5u64;
            let mut rng = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let letters = map.domain.letters();
            for _ in 0..200 {
                let len = 1 + (rng() % 3) as usize;
                let m: Vec<Letter> =
                    (0..len).map(|_| letters[(rng() as usize) % letters.len()]).collect();
                let p = NcPoly::<Rat>::monomial(m);
                let lhs = map.apply(&p.adjoint(&map.domain));
                let rhs = map.apply(&p).adjoint(&map.codomain);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mutual_reduction_is_reflexive() {
        let t = target_relations(4, 1);
        let out = mutual_reduction_equiv(&t.alphabet, &t.relations, &t.relations, &cfg());
        assert_eq!(out.verdict, Verdict::True);
    }

    #[test]
    fn dropping_anticommutation_is_detected() {
        let t = target_relations(4, 1);
        let weakened: Vec<Poly> = t
            .relations
            .iter()
            .filter(|p| {
                // drop A B + B A
                !(p.terms().len() == 2 && p.degree() == 2 && p.constant_term().is_none())
            })
            .cloned()
            .collect();
        assert!(weakened.len() < t.relations.len());
        let out = mutual_reduction_equiv(&t.alphabet, &t.relations, &weakened, &cfg());
        assert_eq!(out.verdict, Verdict::False);
        assert!(!out.witnesses.is_empty());
    }

    #[test]
    fn eta_is_a_homomorphism_at_n_1() {
        let n = 1;
        let t = target_relations(4, n);
        let w = wreath_relations(n);
        let out = check_homomorphism(&eta(n), &t.relations, &w, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
        let out = check_homomorphism(&eta_prime(n), &w, &t.relations, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
    }

    #[test]
    fn inverse_round_trips_at_n_1() {
        let n = 1;
        let t = target_relations(4, n);
        let w = wreath_relations(n);
        let out = check_inverse(&eta(n), &eta_prime(n), &t.relations, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
        let out = check_inverse(&eta_prime(n), &eta(n), &w, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
    }

    #[test]
    fn coproduct_check_at_n_1() {
        let n = 1;
        let t = target_relations(4, n);
        let w = wreath_relations(n);
        let e = eta(n);
        let dd = |l: Letter| matrix_coproduct(&e.domain, l);
        let dc = |l: Letter| wreath_coproduct(n, &e.codomain, l);
        let out = check_cqg_morphism_on_generators(&e, &dd, &dc, &w, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
        let ep = eta_prime(n);
        let out = check_cqg_morphism_on_generators(&ep, &dc, &dd, &t.relations, &cfg());
        assert_eq!(out.verdict, Verdict::True, "{:?}", out.witnesses);
    }
}
