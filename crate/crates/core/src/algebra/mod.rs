//! The free *-algebra on coefficient symbols.
//!
//! Symbols are indexed letters with a star flag. A matrix alphabet carries
//! the fundamental-matrix alias convention: only canonical symbols are
//! materialized, and `entry(inv(i), j) = entry(i, inv(j))*` resolves every
//! matrix position to a canonical letter. The antipode `u_ij -> u_ji*` is
//! defined through the same resolution.
//!
//! Monomial order is degree-lexicographic with symbol key (row, col,
//! starred); letters are created in that order so the packed id order
//! coincides with the spec key.

pub mod par;
pub mod store;

pub use store::{RelationStore, SaturateConfig};

use crate::scalar::Scalar;
use std::cmp::Ordering;

/// One letter: packed `(generator id << 1) | star`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

impl Letter {
    pub fn new(gen: usize, starred: bool) -> Letter {
        Letter(((gen as u32) << 1) | starred as u32)
    }

    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn starred(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn toggled(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl std::fmt::Debug for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g{}{}", self.gen(), if self.starred() { "*" } else { "" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenInfo {
    pub name: String,
    /// Self-adjoint generator (e.g. magic unitary entries): star resolves away.
    pub self_adjoint: bool,
    /// Matrix position (row, col) for fundamental-matrix symbols.
    pub pos: Option<(usize, usize)>,
}

/// Fundamental-matrix structure: symmetric-set size, inverse involution and
/// the canonical-symbol table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLayout {
    pub size: usize,
    pub inv: Vec<usize>,
    /// `entry[i][j]` resolved to (generator id, star).
    pub entry: Vec<Vec<(usize, bool)>>,
    pub canonical_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub gens: Vec<GenInfo>,
    pub matrix: Option<MatrixLayout>,
}

impl Alphabet {
    /// Plain alphabet from names; `self_adjoint` marks magic-unitary-style
    /// generators.
    pub fn plain(names: Vec<(String, bool)>) -> Alphabet {
        Alphabet {
            gens: names
                .into_iter()
                .map(|(name, self_adjoint)| GenInfo { name, self_adjoint, pos: None })
                .collect(),
            matrix: None,
        }
    }

    /// Fundamental-matrix alphabet for a symmetric set with involution
    /// `inv`. Canonical rows are involutive rows and the first row of each
    /// non-involutive pair; other rows resolve through the alias map.
    pub fn fundamental(inv: &[usize]) -> Alphabet {
        let size = inv.len();
        let canonical_rows: Vec<usize> = (0..size).filter(|&i| inv[i] >= i).collect();
        let mut gens = Vec::new();
        let mut gen_at = vec![vec![usize::MAX; size]; size];
        for &r in &canonical_rows {
            for c in 0..size {
                gen_at[r][c] = gens.len();
                gens.push(GenInfo {
                    name: symbol_name(gens.len()),
                    self_adjoint: false,
                    pos: Some((r, c)),
                });
            }
        }
        let mut entry = vec![vec![(usize::MAX, false); size]; size];
        for i in 0..size {
            for j in 0..size {
                entry[i][j] = if inv[i] >= i {
                    (gen_at[i][j], false)
                } else {
                    (gen_at[inv[i]][inv[j]], true)
                };
            }
        }
        Alphabet {
            gens,
            matrix: Some(MatrixLayout { size, inv: inv.to_vec(), entry, canonical_rows }),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.gens.len()
    }

    /// All letters in canonical order (unstarred before starred per
    /// generator; self-adjoint generators contribute one letter).
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (g, info) in self.gens.iter().enumerate() {
            out.push(Letter::new(g, false));
            if !info.self_adjoint {
                out.push(Letter::new(g, true));
            }
        }
        out
    }

    /// Star of a letter, resolving self-adjoint generators.
    pub fn adjoint_letter(&self, l: Letter) -> Letter {
        if self.gens[l.gen()].self_adjoint {
            Letter::new(l.gen(), false)
        } else {
            l.toggled()
        }
    }

    /// Matrix entry (i, j) as a letter.
    pub fn entry(&self, i: usize, j: usize) -> Letter {
        let m = self.matrix.as_ref().expect("entry() needs a matrix alphabet");
        let (g, star) = m.entry[i][j];
        Letter::new(g, star)
    }

    /// Antipode on letters: `u_ij -> u_ji*` through alias resolution.
    /// `None` for alphabets without matrix structure.
    pub fn antipode_letter(&self, l: Letter) -> Option<Letter> {
        let m = self.matrix.as_ref()?;
        let (r, c) = self.gens[l.gen()].pos?;
        let (g2, s2) = m.entry[c][r];
        Some(Letter::new(g2, s2 ^ !l.starred()))
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let base = &self.gens[l.gen()].name;
        if l.starred() {
            format!("{base}*")
        } else {
            base.clone()
        }
    }

    pub fn gen_by_name(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }
}

/// Canonical symbol names: A..Z, then u[i,j] positional names.
fn symbol_name(idx: usize) -> String {
    if idx < 26 {
        ((b'A' + idx as u8) as char).to_string()
    } else {
        format!("s{idx}")
    }
}

pub type Mono = Vec<Letter>;

/// Degree-lexicographic monomial order.
pub fn mono_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Noncommutative polynomial: terms sorted descending by deglex, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly<C> {
    terms: Vec<(Mono, C)>,
}

impl<C: Scalar> NcPoly<C> {
    pub fn zero() -> Self {
        NcPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NcPoly { terms: vec![(Vec::new(), C::one())] }
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            NcPoly { terms: vec![(Vec::new(), c)] }
        }
    }

    pub fn letter(l: Letter) -> Self {
        NcPoly { terms: vec![(vec![l], C::one())] }
    }

    pub fn monomial(m: Mono) -> Self {
        NcPoly { terms: vec![(m, C::one())] }
    }

    pub fn from_terms(terms: Vec<(Mono, C)>) -> Self {
        let mut p = NcPoly { terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by(|(m1, _), (m2, _)| mono_cmp(m2, m1).then_with(|| Ordering::Equal));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.clone() + c;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(m, _)| m.len())
    }

    /// Constant (unit-monomial) coefficient, if present.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.last().and_then(|(m, c)| if m.is_empty() { Some(c) } else { None })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match mono_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.clone() + other.terms[j].1.clone();
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        NcPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    /// `prefix * self * suffix`, scaled by `k`.
    pub fn sandwich(&self, prefix: &[Letter], suffix: &[Letter], k: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mono = Vec::with_capacity(prefix.len() + m.len() + suffix.len());
                mono.extend_from_slice(prefix);
                mono.extend_from_slice(m);
                mono.extend_from_slice(suffix);
                (mono, c.clone() * k.clone())
            })
            .collect();
        // left/right monomial multiplication preserves deglex order
        NcPoly { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                terms.push((m, c1.clone() * c2.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Conjugate-linear anti-automorphism: reverse factors, star letters,
    /// conjugate coefficients.
    pub fn adjoint(&self, alphabet: &Alphabet) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Mono = m.iter().rev().map(|&l| alphabet.adjoint_letter(l)).collect();
                (mono, c.conj())
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Anti-multiplicative antipode; `None` if the alphabet has no matrix
    /// structure.
    pub fn antipode(&self, alphabet: &Alphabet) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mono = Vec::with_capacity(m.len());
            for &l in m.iter().rev() {
                mono.push(alphabet.antipode_letter(l)?);
            }
            terms.push((mono, c.clone()));
        }
        Some(Self::from_terms(terms))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.render();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let body = if m.is_empty() {
                mag.clone()
            } else {
                let word: Vec<String> = m.iter().map(|&l| alphabet.letter_name(l)).collect();
                if mag == "1" {
                    word.join(" ")
                } else {
                    format!("{mag} {}", word.join(" "))
                }
            };
            out.push_str(&body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rat;

    fn fundamental_b4() -> Alphabet {
        // inv = (01)(23)(45)
        Alphabet::fundamental(&[1, 0, 3, 2, 5, 4])
    }

    #[test]
    fn alias_resolution_matches_matrix_display() {
        let a = fundamental_b4();
        // row 0 holds fresh symbols A..F
        assert_eq!(a.letter_name(a.entry(0, 0)), "A");
        assert_eq!(a.letter_name(a.entry(0, 5)), "F");
        // row 1 is the alias row: (B*, A*, D*, C*, F*, E*)
        assert_eq!(a.letter_name(a.entry(1, 0)), "B*");
        assert_eq!(a.letter_name(a.entry(1, 1)), "A*");
        assert_eq!(a.letter_name(a.entry(1, 2)), "D*");
        assert_eq!(a.letter_name(a.entry(1, 5)), "E*");
        // row 2 fresh G..L
        assert_eq!(a.letter_name(a.entry(2, 0)), "G");
        // star-of-star consistency: entry(inv i, inv j) = entry(i,j)*
        for i in 0..6 {
            for j in 0..6 {
                let e = a.entry(i, j);
                let f = a.entry(a.matrix.as_ref().unwrap().inv[i], a.matrix.as_ref().unwrap().inv[j]);
                assert_eq!(f, a.adjoint_letter(e));
            }
        }
    }

    #[test]
    fn involutive_rows_are_independent() {
        // lamplighter layout: t, t^-1, a with inv = (01)(2)
        let a = Alphabet::fundamental(&[1, 0, 2]);
        // canonical rows 0 and 2; row 1 aliases row 0
        assert_eq!(a.gens.len(), 6);
        assert_eq!(a.letter_name(a.entry(1, 0)), "B*");
        assert_eq!(a.letter_name(a.entry(1, 2)), "C*");
        // involutive row gets its own symbols
        assert_eq!(a.letter_name(a.entry(2, 0)), "D");
        assert_eq!(a.letter_name(a.entry(2, 2)), "F");
    }

    #[test]
    fn adjoint_is_an_involution_and_reverses() {
        let a = fundamental_b4();
        let ab = NcPoly::<Rat>::monomial(vec![a.entry(0, 0), a.entry(0, 1)]);
        let adj = ab.adjoint(&a);
        assert_eq!(adj.render(&a), "B* A*");
        assert_eq!(adj.adjoint(&a), ab);
    }

    #[test]
    fn antipode_examples() {
        let a = fundamental_b4();
        // kappa(1) = 1
        assert_eq!(NcPoly::<Rat>::one().antipode(&a).unwrap(), NcPoly::one());
        // B = u_{a, a^-1}: kappa(B) = u_{a^-1, a}* = (B*)* = B
        let b = NcPoly::<Rat>::letter(a.entry(0, 1));
        assert_eq!(b.antipode(&a).unwrap(), b);
        // kappa(A) = u_00* = A*
        let x = NcPoly::<Rat>::letter(a.entry(0, 0));
        assert_eq!(x.antipode(&a).unwrap().render(&a), "A*");
    }

    #[test]
    fn antipode_antimultiplicative_on_random_monomials() {
        let a = fundamental_b4();
        let letters = a.letters();
        let mut state = 99u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let len1 = (rng() % 4) as usize;
            let len2 = (rng() % 4) as usize;
            let m: Mono = (0..len1).map(|_| letters[(rng() as usize) % letters.len()]).collect();
            let n: Mono = (0..len2).map(|_| letters[(rng() as usize) % letters.len()]).collect();
            let pm = NcPoly::<Rat>::monomial(m.clone());
            let pn = NcPoly::<Rat>::monomial(n.clone());
            let lhs = pm.mul(&pn).antipode(&a).unwrap();
            let rhs = pn.antipode(&a).unwrap().mul(&pm.antipode(&a).unwrap());
            assert_eq!(lhs, rhs);
            // antipode commutes with alias resolution / adjoint square
            let round = pm.adjoint(&a).adjoint(&a);
            assert_eq!(round, pm);
        }
    }

    #[test]
    fn poly_arithmetic_and_order() {
        let a = fundamental_b4();
        let x = a.entry(0, 0);
        let y = a.entry(0, 1);
        let p = NcPoly::from_terms(vec![
            (vec![x, y], rat(1)),
            (vec![], rat(-1)),
            (vec![y], rat(2)),
        ]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.constant_term(), Some(&rat(-1)));
        let q = p.sub(&p);
        assert!(q.is_zero());
        let s = p.add(&NcPoly::constant(rat(1)));
        assert_eq!(s.terms().len(), 2);
    }
}
