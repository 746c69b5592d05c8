//! Garside left-greedy normal form for braid groups.
//!
//! Elements are stored as `Delta^p s_1 ... s_k` where `Delta` is the half
//! twist, each `s_i` is a permutation braid (neither trivial nor `Delta`),
//! and consecutive factors are left-weighted: every starting generator of
//! `s_{i+1}` finishes `s_i`. This factorization is unique, so structural
//! equality decides the word problem exactly.
//!
//! Permutations are tables `p[i] = image of strand i`, composed left to
//! right: `(a * b)[i] = b[a[i]]`.

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn half_twist(n: usize) -> Perm {
    (0..n).map(|i| (n - 1 - i) as u8).collect()
}

fn transposition(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i, i + 1);
    p
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut q = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

/// Starting set of the permutation braid: descents of `p`.
fn starts(p: &Perm) -> Vec<usize> {
    (0..p.len() - 1).filter(|&i| p[i] > p[i + 1]).collect()
}

/// Finishing set: descents of the inverse.
fn finishes(p: &Perm) -> Vec<bool> {
    let q = invert(p);
    (0..p.len() - 1).map(|i| q[i] > q[i + 1]).collect()
}

/// Conjugation by the half twist (sigma_i -> sigma_{n-1-i}).
fn flip(p: &Perm) -> Perm {
    let w0 = half_twist(p.len());
    compose(&w0, &compose(p, &w0))
}

/// A braid group element in left-greedy normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidElem {
    pub inf: i32,
    pub factors: Vec<Perm>,
}

impl BraidElem {
    pub fn one(_n: usize) -> Self {
        BraidElem { inf: 0, factors: Vec::new() }
    }
}

/// Make the adjacent pair (a, b) left-weighted in place.
fn left_weight_pair(a: &mut Perm, b: &mut Perm) -> bool {
    let mut changed = false;
    loop {
        let fin = finishes(a);
        let mut moved = false;
        for i in starts(b) {
            if !fin[i] {
                // slide sigma_i from the head of b onto the tail of a
                for x in a.iter_mut() {
                    if *x as usize == i {
                        *x = (i + 1) as u8;
                    } else if *x as usize == i + 1 {
                        *x = i as u8;
                    }
                }
                b.swap(i, i + 1);
                moved = true;
                changed = true;
                break;
            }
        }
        if !moved {
            return changed;
        }
    }
}

fn renormalize(n: usize, inf: &mut i32, factors: &mut Vec<Perm>) {
    let id = identity(n);
    let delta = half_twist(n);
    loop {
        let mut changed = false;
        factors.retain(|f| *f != id);
        let m = factors.len();
        for j in (0..m.saturating_sub(1)).rev() {
            let (head, tail) = factors.split_at_mut(j + 1);
            changed |= left_weight_pair(&mut head[j], &mut tail[0]);
        }
        factors.retain(|f| *f != id);
        // a leading Delta is already to the left of the other factors
        while factors.first() == Some(&delta) {
            factors.remove(0);
            *inf += 1;
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

/// Multiply on the right by `sigma_i^(exp)` with exp in {+1, -1}.
pub fn mul_gen(n: usize, e: &BraidElem, i: usize, exp: i8) -> BraidElem {
    let mut inf = e.inf;
    let mut factors = e.factors.clone();
    if exp > 0 {
        factors.push(transposition(n, i));
    } else {
        // sigma_i^-1 = Delta^-1 (Delta sigma_i^-1); push Delta^-1 to front
        inf -= 1;
        for f in factors.iter_mut() {
            *f = flip(f);
        }
        factors.push(compose(&half_twist(n), &transposition(n, i)));
    }
    renormalize(n, &mut inf, &mut factors);
    BraidElem { inf, factors }
}

/// Product of two normal forms.
pub fn mul(n: usize, a: &BraidElem, b: &BraidElem) -> BraidElem {
    let mut inf = a.inf + b.inf;
    let mut factors: Vec<Perm> = a
        .factors
        .iter()
        .map(|f| {
            let mut g = f.clone();
            if b.inf.rem_euclid(2) == 1 {
                g = flip(&g);
            }
            g
        })
        .collect();
    factors.extend(b.factors.iter().cloned());
    renormalize(n, &mut inf, &mut factors);
    BraidElem { inf, factors }
}

/// Whether the factor list is already left-weighted; used by tests to check
/// that re-normalizing a normal form leaves it unchanged.
pub fn is_normal(n: usize, e: &BraidElem) -> bool {
    let id = identity(n);
    let delta = half_twist(n);
    if e.factors.iter().any(|f| *f == id || *f == delta) {
        return false;
    }
    for j in 0..e.factors.len().saturating_sub(1) {
        let fin = finishes(&e.factors[j]);
        if starts(&e.factors[j + 1]).iter().any(|&i| !fin[i]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, w: &[(usize, i8)]) -> BraidElem {
        let mut e = BraidElem::one(n);
        for &(i, exp) in w {
            e = mul_gen(n, &e, i, exp);
        }
        e
    }

    #[test]
    fn braid_relators_normalize_equal() {
        // B4: sigma_0 sigma_2 = sigma_2 sigma_0, sigma_i sigma_{i+1} sigma_i = ...
        assert_eq!(word(4, &[(0, 1), (2, 1)]), word(4, &[(2, 1), (0, 1)]));
        assert_eq!(
            word(4, &[(0, 1), (1, 1), (0, 1)]),
            word(4, &[(1, 1), (0, 1), (1, 1)])
        );
        assert_eq!(
            word(4, &[(2, 1), (1, 1), (2, 1)]),
            word(4, &[(1, 1), (2, 1), (1, 1)])
        );
    }

    #[test]
    fn inverses_cancel() {
        for i in 0..3 {
            let e = word(4, &[(i, 1), (i, -1)]);
            assert_eq!(e, BraidElem::one(4));
            let e = word(4, &[(i, -1), (i, 1)]);
            assert_eq!(e, BraidElem::one(4));
        }
    }

    #[test]
    fn normal_forms_are_left_weighted() {
        let mut state = 12345u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let len = (rng() % 9) as usize;
            let w: Vec<(usize, i8)> = (0..len)
                .map(|_| ((rng() % 3) as usize, if rng() % 2 == 0 { 1 } else { -1 }))
                .collect();
            let e = word(4, &w);
            assert!(is_normal(4, &e), "not left-weighted: {e:?} from {w:?}");
            // renormalizing changes nothing
            let mut inf = e.inf;
            let mut fs = e.factors.clone();
            renormalize(4, &mut inf, &mut fs);
            assert_eq!((inf, fs), (e.inf, e.factors));
        }
    }

    #[test]
    fn delta_squared_is_central() {
        // Delta^2 generates the center of B_n; check it commutes in nf
        let d2 = word(4, &[(0, 1), (1, 1), (2, 1), (0, 1), (1, 1), (0, 1)]);
        let d2 = mul(4, &d2, &d2.clone());
        assert!(d2.factors.is_empty());
        assert_eq!(d2.inf, 2);
        let g = word(4, &[(1, 1)]);
        assert_eq!(mul(4, &d2, &g), mul(4, &g, &d2));
    }
}
