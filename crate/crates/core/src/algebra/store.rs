//! Relation store: reduced basis, leading-term rewriting, and the
//! bounded-degree saturation pipeline.
//!
//! The saturation fixpoint applies, per round: inter-reduction and overlap
//! completion up to the degree bound, adjoint closure, antipode closure,
//! partition-of-unity multiplications, normality detection, the
//! zero-product detection `m m* = 0  =>  m = 0` (valid in the universal
//! C*-quotient the relations present), and normal-pair annihilation.
//! Output is deterministic: batch steps propose candidates against a
//! frozen snapshot and apply them in input order.

use super::par::pmap;
use super::{mono_cmp, Alphabet, Letter, Mono, NcPoly};
use crate::scalar::Scalar;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq)]
pub struct SaturateConfig {
    pub degree_bound: usize,
    pub round_cap: usize,
    pub relation_cap: usize,
    /// Multiply partition-of-unity identities by monomials up to this degree.
    pub pmul_degree: usize,
    /// Enable the C*-zero-product rule.
    pub cstar_rule: bool,
    pub workers: usize,
}

impl Default for SaturateConfig {
    fn default() -> Self {
        SaturateConfig {
            degree_bound: 6,
            round_cap: 8,
            relation_cap: 200_000,
            pmul_degree: 2,
            cstar_rule: true,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone)]
struct Rel<C> {
    poly: NcPoly<C>,
    alive: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SatCounters {
    pub rounds: usize,
    pub reductions: u64,
    pub spolys: u64,
    pub added: u64,
    pub degree_skips: u64,
}

#[derive(Debug, Clone)]
pub struct RelationStore<C> {
    pub alphabet: Alphabet,
    rels: Vec<Rel<C>>,
    lm_index: HashMap<Box<[Letter]>, usize>,
    /// Every subword of every alive leading term, for retire lookups.
    sub_index: HashMap<Box<[Letter]>, Vec<usize>>,
    /// Completion cursor: rels below this index have had their ambiguities
    /// with all earlier rels processed.
    pairs_done: usize,
    pub zero_symbols: BTreeSet<usize>,
    pub normal_flags: BTreeSet<usize>,
    /// Imported relations with provenance; also folded into the basis.
    pub assumptions: Vec<(NcPoly<C>, String)>,
    pub parked: Vec<NcPoly<C>>,
    pub complete: bool,
    pub counters: SatCounters,
}

fn contains_subword(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len()
        && (0..=hay.len() - needle.len()).any(|s| &hay[s..s + needle.len()] == needle)
}

impl<C: Scalar> RelationStore<C> {
    pub fn new(alphabet: Alphabet) -> Self {
        let mut normal_flags = BTreeSet::new();
        for (g, info) in alphabet.gens.iter().enumerate() {
            if info.self_adjoint {
                normal_flags.insert(g);
            }
        }
        RelationStore {
            alphabet,
            rels: Vec::new(),
            lm_index: HashMap::new(),
            sub_index: HashMap::new(),
            pairs_done: 0,
            zero_symbols: BTreeSet::new(),
            normal_flags,
            assumptions: Vec::new(),
            parked: Vec::new(),
            complete: true,
            counters: SatCounters::default(),
        }
    }

    /// Alive basis polynomials in canonical order (ascending leading term).
    pub fn basis(&self) -> Vec<&NcPoly<C>> {
        let mut ix: Vec<usize> = (0..self.rels.len()).filter(|&i| self.rels[i].alive).collect();
        ix.sort_by(|&a, &b| {
            mono_cmp(self.rels[a].poly.leading().unwrap().0, self.rels[b].poly.leading().unwrap().0)
        });
        ix.into_iter().map(|i| &self.rels[i].poly).collect()
    }

    pub fn basis_len(&self) -> usize {
        self.rels.iter().filter(|r| r.alive).count()
    }

    /// Full normal form under leading-term rewriting.
    pub fn reduce(&self, p: &NcPoly<C>) -> NcPoly<C> {
        self.reduce_excluding(p, usize::MAX)
    }

    fn find_reducer(&self, m: &[Letter], skip: usize) -> Option<(usize, usize, usize)> {
        for start in 0..m.len() {
            for end in (start + 1..=m.len()).rev() {
                if let Some(&ri) = self.lm_index.get(&m[start..end]) {
                    if ri != skip && self.rels[ri].alive {
                        return Some((ri, start, end));
                    }
                }
            }
        }
        None
    }

    /// Normal form, never rewriting with basis element `skip`.
    pub fn reduce_excluding(&self, p: &NcPoly<C>, skip: usize) -> NcPoly<C> {
        let mut work = p.clone();
        let mut done: Vec<(Mono, C)> = Vec::new();
        while let Some((m, c)) = work.terms().first().cloned() {
            match self.find_reducer(&m, skip) {
                Some((ri, start, end)) => {
                    let rel = &self.rels[ri].poly;
                    let sub = rel.sandwich(&m[..start], &m[end..], &c);
                    work = work.sub(&sub);
                }
                None => {
                    done.push((m, c));
                    work = NcPoly::from_terms(work.terms()[1..].to_vec());
                }
            }
        }
        NcPoly::from_terms(done)
    }

    pub fn reduces_to_zero(&self, p: &NcPoly<C>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Reduce, normalize monic, park or insert, and inter-reduce. Returns
    /// true when the basis changed.
    pub fn add(&mut self, p: NcPoly<C>, cfg: &SaturateConfig) -> bool {
        let mut work = vec![p];
        let mut changed = false;
        while let Some(q) = work.pop() {
            self.counters.reductions += 1;
            let r = self.reduce(&q);
            if r.is_zero() {
                continue;
            }
            if r.degree() > cfg.degree_bound {
                self.parked.push(r);
                continue;
            }
            let lead = r.leading().unwrap().1.clone();
            let monic = r.scale(&(C::one() / lead));
            let lm: Box<[Letter]> = monic.leading().unwrap().0.clone().into();
            // retire basis elements whose leading term became reducible
            let retire: Vec<usize> = match self.sub_index.get(lm.as_ref()) {
                None => Vec::new(),
                Some(cands) => cands
                    .iter()
                    .copied()
                    .filter(|&i| {
                        self.rels[i].alive
                            && contains_subword(self.rels[i].poly.leading().unwrap().0, &lm)
                    })
                    .collect(),
            };
            for i in retire {
                self.rels[i].alive = false;
                let key: Box<[Letter]> = self.rels[i].poly.leading().unwrap().0.clone().into();
                self.lm_index.remove(&key);
                work.push(self.rels[i].poly.clone());
            }
            let idx = self.rels.len();
            for start in 0..lm.len() {
                for end in start + 1..=lm.len() {
                    self.sub_index
                        .entry(lm[start..end].into())
                        .or_default()
                        .push(idx);
                }
            }
            self.lm_index.insert(lm, idx);
            self.rels.push(Rel { poly: monic, alive: true });
            self.counters.added += 1;
            changed = true;
        }
        changed
    }

    /// Record an imported relation; it joins the basis like any other but
    /// stays listed with its provenance.
    pub fn add_assumption(&mut self, p: NcPoly<C>, provenance: &str, cfg: &SaturateConfig) -> bool {
        self.assumptions.push((p.clone(), provenance.to_string()));
        self.add(p, cfg)
    }

    fn over_cap(&self, cfg: &SaturateConfig) -> bool {
        self.rels.len() + self.parked.len() > cfg.relation_cap
    }

    /// Overlap completion for all unprocessed basis pairs, to quiescence.
    /// S-polynomials are gathered per cursor step and added smallest-first.
    fn complete_pairs(&mut self, cfg: &SaturateConfig) -> bool {
        let mut changed = false;
        while self.pairs_done < self.rels.len() {
            if self.over_cap(cfg) {
                self.complete = false;
                return changed;
            }
            let i = self.pairs_done;
            self.pairs_done += 1;
            if !self.rels[i].alive {
                continue;
            }
            let mut spolys: Vec<NcPoly<C>> = Vec::new();
            for j in 0..=i {
                if !self.rels[i].alive {
                    break;
                }
                if !self.rels[j].alive {
                    continue;
                }
                self.overlap_spolys(i, j, cfg, &mut spolys);
                if j != i {
                    self.overlap_spolys(j, i, cfg, &mut spolys);
                }
            }
            spolys.sort_by(|p, q| {
                mono_cmp(p.leading().unwrap().0, q.leading().unwrap().0)
            });
            for s in spolys {
                changed |= self.add(s, cfg);
            }
        }
        changed
    }

    /// S-polynomials of all proper overlaps suffix(LM_a) = prefix(LM_b).
    fn overlap_spolys(
        &mut self,
        a: usize,
        b: usize,
        cfg: &SaturateConfig,
        out: &mut Vec<NcPoly<C>>,
    ) {
        let (pa, pb) = (&self.rels[a].poly, &self.rels[b].poly);
        // two monomial rules always resolve
        if pa.terms().len() == 1 && pb.terms().len() == 1 {
            return;
        }
        let la = pa.leading().unwrap().0;
        let lb = pb.leading().unwrap().0;
        let mut spolys = 0u64;
        let mut skips = 0u64;
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] != lb[..k] {
                continue;
            }
            if la.len() + lb.len() - k > cfg.degree_bound {
                skips += 1;
                continue;
            }
            // amb = la . lb[k..]; S = prefix*tail_b - tail_a*suffix
            let tail_a = NcPoly::from_terms(pa.terms()[1..].to_vec());
            let tail_b = NcPoly::from_terms(pb.terms()[1..].to_vec());
            let left = tail_b.sandwich(&la[..la.len() - k], &[], &C::one());
            let right = tail_a.sandwich(&[], &lb[k..], &C::one());
            let s = left.sub(&right);
            spolys += 1;
            if !s.is_zero() {
                out.push(s);
            }
        }
        self.counters.spolys += spolys;
        self.counters.degree_skips += skips;
    }

    /// Reduce tails against the current basis (leading terms are stable).
    fn refresh_tails(&mut self) {
        for i in 0..self.rels.len() {
            if !self.rels[i].alive || self.rels[i].poly.terms().len() == 1 {
                continue;
            }
            let tail = NcPoly::from_terms(self.rels[i].poly.terms()[1..].to_vec());
            let reduced = self.reduce(&tail);
            if reduced != tail {
                let lead = NcPoly::from_terms(vec![self.rels[i].poly.terms()[0].clone()]);
                self.rels[i].poly = lead.add(&reduced);
            }
        }
    }

    fn alive_indices(&self) -> Vec<usize> {
        (0..self.rels.len()).filter(|&i| self.rels[i].alive).collect()
    }

    /// Adjoint closure: the ideal is a *-ideal.
    fn closure_adjoint(&mut self, cfg: &SaturateConfig) -> bool {
        let idxs = self.alive_indices();
        let polys: Vec<NcPoly<C>> =
            idxs.iter().map(|&i| self.rels[i].poly.adjoint(&self.alphabet)).collect();
        let survivors: Vec<bool> =
            pmap(&polys, cfg.workers, |q| !self.reduces_to_zero(q));
        let mut changed = false;
        for (q, keep) in polys.into_iter().zip(survivors) {
            if keep {
                changed |= self.add(q, cfg);
            }
        }
        changed
    }

    /// Antipode closure (matrix alphabets only).
    fn closure_antipode(&mut self, cfg: &SaturateConfig) -> bool {
        if self.alphabet.matrix.is_none() {
            return false;
        }
        let idxs = self.alive_indices();
        let polys: Vec<NcPoly<C>> = idxs
            .iter()
            .filter_map(|&i| self.rels[i].poly.antipode(&self.alphabet))
            .collect();
        let survivors: Vec<bool> =
            pmap(&polys, cfg.workers, |q| !self.reduces_to_zero(q));
        let mut changed = false;
        for (q, keep) in polys.into_iter().zip(survivors) {
            if keep {
                changed |= self.add(q, cfg);
            }
        }
        changed
    }

    /// Monomials of degree 1..=cap over the alphabet, canonical order,
    /// skipping those that already reduce to zero.
    fn live_monomials(&self, cap: usize) -> Vec<Mono> {
        let letters = self.alphabet.letters();
        let mut out: Vec<Mono> = Vec::new();
        let mut layer: Vec<Mono> = vec![Vec::new()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for m in &layer {
                for &l in &letters {
                    let mut v = m.clone();
                    v.push(l);
                    if !self.reduces_to_zero(&NcPoly::monomial(v.clone())) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// For each partition-of-unity style identity p (any basis element with
    /// a constant term) and monomial x: propose x p and p x, reduced without
    /// using p itself.
    fn partition_mults(&mut self, cfg: &SaturateConfig) -> bool {
        let affine: Vec<usize> = self
            .alive_indices()
            .into_iter()
            .filter(|&i| self.rels[i].poly.constant_term().is_some())
            .collect();
        if affine.is_empty() {
            return false;
        }
        let monos = self.live_monomials(cfg.pmul_degree);
        let mut jobs: Vec<(usize, Mono, bool)> = Vec::new();
        for &i in &affine {
            for m in &monos {
                jobs.push((i, m.clone(), false));
                jobs.push((i, m.clone(), true));
            }
        }
        let proposals: Vec<Option<NcPoly<C>>> = pmap(&jobs, cfg.workers, |(i, m, right)| {
            let p = &self.rels[*i].poly;
            let q = if *right {
                p.sandwich(&[], m, &C::one())
            } else {
                p.sandwich(m, &[], &C::one())
            };
            let r = self.reduce_excluding(&q, *i);
            if r.is_zero() {
                None
            } else {
                Some(r)
            }
        });
        let mut changed = false;
        for prop in proposals.into_iter().flatten() {
            changed |= self.add(prop, cfg);
        }
        changed
    }

    /// Flag x normal when x x* - x* x reduces to 0, or when both
    /// x^2 x* - x and x* x^2 - x do. Flagging injects the commutator.
    fn detect_normal(&mut self, cfg: &SaturateConfig) -> bool {
        let mut changed = false;
        for g in 0..self.alphabet.gens.len() {
            if self.normal_flags.contains(&g) || self.zero_symbols.contains(&g) {
                continue;
            }
            let x = Letter::new(g, false);
            let xs = self.alphabet.adjoint_letter(x);
            let comm = NcPoly::<C>::monomial(vec![x, xs]).sub(&NcPoly::monomial(vec![xs, x]));
            let direct = self.reduces_to_zero(&comm);
            let criterion = direct
                || (self
                    .reduces_to_zero(&NcPoly::monomial(vec![x, x, xs]).sub(&NcPoly::letter(x)))
                    && self
                        .reduces_to_zero(&NcPoly::monomial(vec![xs, x, x]).sub(&NcPoly::letter(x))));
            if criterion {
                self.normal_flags.insert(g);
                self.add(comm, cfg);
                changed = true;
            }
        }
        changed
    }

    /// Zero-product detection: if m m* reduces to 0 in the *-ideal, m is 0
    /// in the universal C*-quotient. Applied to short monomials.
    fn cstar_zero_products(&mut self, cfg: &SaturateConfig) -> bool {
        if !cfg.cstar_rule {
            return false;
        }
        let monos = self.live_monomials(2);
        let hits: Vec<bool> = pmap(&monos, cfg.workers, |m| {
            let p = NcPoly::<C>::monomial(m.clone());
            let mm = p.mul(&p.adjoint(&self.alphabet));
            self.reduces_to_zero(&mm)
        });
        let mut changed = false;
        for (m, hit) in monos.into_iter().zip(hits) {
            if hit {
                changed |= self.add(NcPoly::monomial(m), cfg);
            }
        }
        changed
    }

    /// Fuglede-Putnam style closure: for a flagged-normal letter x and any
    /// letter y, x y = y x in the ideal entails x* y = y x*.
    fn normal_commutation(&mut self, cfg: &SaturateConfig) -> bool {
        let flagged: Vec<usize> = self.normal_flags.iter().copied().collect();
        let letters = self.alphabet.letters();
        let mut jobs: Vec<(Letter, Letter)> = Vec::new();
        for &g in &flagged {
            for x in [Letter::new(g, false), self.alphabet.adjoint_letter(Letter::new(g, false))]
            {
                for &y in &letters {
                    jobs.push((x, y));
                }
            }
        }
        jobs.sort();
        jobs.dedup();
        let hits: Vec<bool> = pmap(&jobs, cfg.workers, |&(x, y)| {
            let comm =
                NcPoly::<C>::monomial(vec![x, y]).sub(&NcPoly::monomial(vec![y, x]));
            if !self.reduces_to_zero(&comm) {
                return false;
            }
            let xs = self.alphabet.adjoint_letter(x);
            let star =
                NcPoly::<C>::monomial(vec![xs, y]).sub(&NcPoly::monomial(vec![y, xs]));
            !self.reduces_to_zero(&star)
        });
        let mut changed = false;
        for (&(x, y), hit) in jobs.iter().zip(hits) {
            if hit {
                let xs = self.alphabet.adjoint_letter(x);
                let star =
                    NcPoly::<C>::monomial(vec![xs, y]).sub(&NcPoly::monomial(vec![y, xs]));
                changed |= self.add(star, cfg);
            }
        }
        changed
    }

    /// For normal U, V with U V = 0: U*V = V U* = V* U = U V* = V U = 0.
    fn normal_annihilation(&mut self, cfg: &SaturateConfig) -> bool {
        let flagged: Vec<usize> = self.normal_flags.iter().copied().collect();
        let mut pairs: Vec<(Letter, Letter)> = Vec::new();
        for &g in &flagged {
            for &h in &flagged {
                let gs: &[Letter] = &[Letter::new(g, false), self.alphabet.adjoint_letter(Letter::new(g, false))];
                let hs: &[Letter] = &[Letter::new(h, false), self.alphabet.adjoint_letter(Letter::new(h, false))];
                for &x in gs {
                    for &y in hs {
                        pairs.push((x, y));
                    }
                }
            }
        }
        pairs.sort();
        pairs.dedup();
        let hits: Vec<bool> = pmap(&pairs, cfg.workers, |&(x, y)| {
            self.reduces_to_zero(&NcPoly::<C>::monomial(vec![x, y]))
        });
        let mut changed = false;
        for (&(x, y), hit) in pairs.iter().zip(hits) {
            if !hit {
                continue;
            }
            let (xs, ys) = (self.alphabet.adjoint_letter(x), self.alphabet.adjoint_letter(y));
            for m in [vec![xs, y], vec![y, xs], vec![ys, x], vec![x, ys], vec![y, x]] {
                if !self.reduces_to_zero(&NcPoly::monomial(m.clone())) {
                    changed |= self.add(NcPoly::monomial(m), cfg);
                }
            }
        }
        changed
    }

    fn unpark(&mut self, cfg: &SaturateConfig) -> bool {
        if self.parked.is_empty() {
            return false;
        }
        let parked = std::mem::take(&mut self.parked);
        let before = self.counters.added;
        for p in parked {
            self.add(p, cfg);
        }
        self.counters.added > before
    }

    fn update_zero_symbols(&mut self) -> bool {
        let mut changed = false;
        for g in 0..self.alphabet.gens.len() {
            if !self.zero_symbols.contains(&g)
                && self.reduces_to_zero(&NcPoly::<C>::letter(Letter::new(g, false)))
            {
                self.zero_symbols.insert(g);
                changed = true;
            }
        }
        changed
    }

    /// Run the rule pipeline to a fixpoint (or to the round cap).
    pub fn saturate(&mut self, cfg: &SaturateConfig) {
        let trace = std::env::var_os("QIG_TRACE").is_some();
        macro_rules! step {
            ($label:expr, $changed:ident, $body:expr) => {{
                let t0 = std::time::Instant::now();
                $changed |= $body;
                if trace {
                    eprintln!(
                        "qig-trace: {} {:?} basis={} spolys={} reductions={}",
                        $label,
                        t0.elapsed(),
                        self.basis_len(),
                        self.counters.spolys,
                        self.counters.reductions
                    );
                }
            }};
        }
        let mut fixpoint = false;
        for _ in 0..cfg.round_cap {
            if self.over_cap(cfg) {
                self.complete = false;
                break;
            }
            self.counters.rounds += 1;
            let mut changed = false;
            // cheap closure rules first: they produce the short relations
            // that keep overlap completion from wandering
            step!("adjoint", changed, self.closure_adjoint(cfg));
            step!("antipode", changed, self.closure_antipode(cfg));
            self.refresh_tails();
            step!("pmul", changed, self.partition_mults(cfg));
            step!("normal", changed, self.detect_normal(cfg));
            step!("cstar", changed, self.cstar_zero_products(cfg));
            step!("annihil", changed, self.normal_annihilation(cfg));
            step!("fuglede", changed, self.normal_commutation(cfg));
            step!("unpark", changed, self.unpark(cfg));
            step!("complete", changed, self.complete_pairs(cfg));
            changed |= self.update_zero_symbols();
            if !changed {
                fixpoint = true;
                break;
            }
        }
        if !fixpoint {
            self.complete = false;
        }
        self.refresh_tails();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Rat;

    type Store = RelationStore<Rat>;

    fn b4_alphabet() -> Alphabet {
        Alphabet::fundamental(&[1, 0, 3, 2, 5, 4])
    }

    fn mono(a: &Alphabet, names: &[&str]) -> NcPoly<Rat> {
        let m: Mono = names
            .iter()
            .map(|n| {
                let (base, star) = match n.strip_suffix('*') {
                    Some(b) => (b, true),
                    None => (*n, false),
                };
                Letter::new(a.gen_by_name(base).unwrap(), star)
            })
            .collect();
        NcPoly::monomial(m)
    }

    #[test]
    fn reduce_monomial_relation() {
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["A", "B"]), &cfg);
        assert!(st.reduces_to_zero(&mono(&a, &["A", "B"])));
        assert!(st.reduces_to_zero(&mono(&a, &["C", "A", "B", "D"])));
        assert!(!st.reduces_to_zero(&mono(&a, &["B", "A"])));
    }

    #[test]
    fn adjoint_closure_adds_star_relation() {
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["A", "B"]), &cfg);
        st.saturate(&cfg);
        assert!(st.reduces_to_zero(&mono(&a, &["B*", "A*"])));
        assert!(st.complete);
    }

    #[test]
    fn reduce_is_idempotent_on_random_polys() {
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["A", "B"]), &cfg);
        st.add(
            mono(&a, &["E", "A"]).sub(&mono(&a, &["A", "E"])),
            &cfg,
        );
        st.add(
            mono(&a, &["A", "A*"])
                .add(&mono(&a, &["B", "B*"]))
                .sub(&NcPoly::one()),
            &cfg,
        );
        st.saturate(&cfg);
        let letters = a.letters();
        let mut state = 31u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let nterms = 1 + (rng() % 4) as usize;
            let mut terms = Vec::new();
            for _ in 0..nterms {
                let len = (rng() % 5) as usize;
                let m: Mono =
                    (0..len).map(|_| letters[(rng() as usize) % letters.len()]).collect();
                terms.push((m, rat((rng() % 7) as i64 - 3)));
            }
            let p = NcPoly::from_terms(terms);
            let r1 = st.reduce(&p);
            assert_eq!(st.reduce(&r1), r1);
        }
    }

    #[test]
    fn completion_derives_self_adjointness_of_involutive_unitary() {
        // 1x1 involutive toy: u^2 = 1, u u* = 1, u* u = 1 entail u = u*
        let a = Alphabet::fundamental(&[0]);
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        let u = Letter::new(0, false);
        let us = Letter::new(0, true);
        st.add(NcPoly::monomial(vec![u, u]).sub(&NcPoly::one()), &cfg);
        st.add(NcPoly::monomial(vec![u, us]).sub(&NcPoly::one()), &cfg);
        st.add(NcPoly::monomial(vec![us, u]).sub(&NcPoly::one()), &cfg);
        st.saturate(&cfg);
        let diff = NcPoly::<Rat>::letter(u).sub(&NcPoly::letter(us));
        assert!(st.reduces_to_zero(&diff));
        // and u is flagged normal
        assert!(st.normal_flags.contains(&0));
    }

    #[test]
    fn cstar_rule_kills_zero_products() {
        // EA = AE and A E* A* = 0 entail (AE)(AE)* = 0, so AE = 0
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["E", "A"]).sub(&mono(&a, &["A", "E"])), &cfg);
        st.add(mono(&a, &["A", "E*", "A*"]), &cfg);
        st.saturate(&cfg);
        assert!(st.reduces_to_zero(&mono(&a, &["A", "E"])));
        assert!(st.reduces_to_zero(&mono(&a, &["E", "A"])));
    }

    #[test]
    fn partition_multiplication_reaches_symbol_zero() {
        // C A* = 0, C B* = 0 and AA* + BB* = 1 give C = C(AA*+BB*) = 0
        // after annihilation-style star relations; feed the starred forms
        // directly to isolate the partition rule.
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["C", "A"]), &cfg);
        st.add(mono(&a, &["C", "B"]), &cfg);
        st.add(mono(&a, &["C", "A*"]), &cfg);
        st.add(mono(&a, &["C", "B*"]), &cfg);
        st.add(
            mono(&a, &["A", "A*"]).add(&mono(&a, &["B", "B*"])).sub(&NcPoly::one()),
            &cfg,
        );
        st.saturate(&cfg);
        let c = a.gen_by_name("C").unwrap();
        assert!(st.zero_symbols.contains(&c), "C should reduce to zero");
    }

    #[test]
    fn normal_annihilation_from_prop_2_17() {
        // A E = 0 with A, E normal adds the five companions
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        st.add(mono(&a, &["A", "E"]), &cfg);
        st.add(mono(&a, &["A", "A*"]).sub(&mono(&a, &["A*", "A"])), &cfg);
        st.add(mono(&a, &["E", "E*"]).sub(&mono(&a, &["E*", "E"])), &cfg);
        st.saturate(&cfg);
        for pair in [&["A*", "E"][..], &["E", "A*"], &["E*", "A"], &["A", "E*"], &["E", "A"]] {
            assert!(st.reduces_to_zero(&mono(&a, pair)), "missing {pair:?}");
        }
    }

    #[test]
    fn saturation_is_deterministic_across_runs_and_workers() {
        let a = b4_alphabet();
        let build = |workers: usize| {
            let mut st = Store::new(a.clone());
            let cfg = SaturateConfig { workers, ..Default::default() };
            st.add(mono(&a, &["A", "E*"]).add(&mono(&a, &["F", "B*"])), &cfg);
            st.add(mono(&a, &["B*", "A*"]), &cfg);
            st.add(mono(&a, &["E", "A"]).sub(&mono(&a, &["A", "E"])), &cfg);
            st.add(
                mono(&a, &["A", "A*"]).add(&mono(&a, &["B", "B*"])).sub(&NcPoly::one()),
                &cfg,
            );
            st.saturate(&cfg);
            st.basis().into_iter().map(|p| p.render(&a)).collect::<Vec<_>>()
        };
        let one = build(1);
        assert_eq!(one, build(1));
        assert_eq!(one, build(4));
        assert_eq!(one, build(8));
    }

    #[test]
    fn ideal_soundness_every_input_rereduces_to_zero() {
        let a = b4_alphabet();
        let mut st = Store::new(a.clone());
        let cfg = SaturateConfig::default();
        let inputs = vec![
            mono(&a, &["A", "E*"]).add(&mono(&a, &["F", "B*"])),
            mono(&a, &["B*", "A*"]),
            mono(&a, &["E", "A"]).sub(&mono(&a, &["A", "E"])),
            mono(&a, &["A", "A*"]).add(&mono(&a, &["B", "B*"])).sub(&NcPoly::one()),
        ];
        for p in &inputs {
            st.add(p.clone(), &cfg);
        }
        st.saturate(&cfg);
        for p in &inputs {
            assert!(st.reduces_to_zero(p));
        }
    }
}
