//! Group presentations with a symmetric generating set.
//!
//! The presentation DSL:
//!
//! ```text
//! group b4
//! generators a b c
//! relations a c = c a, a b a = b a b, c b c = b c b
//! backend braid(4)
//! # comments run to end of line
//! assume rel "A Q = Q A" provenance "[qiso dual] Lemma 4.5"
//! ```
//!
//! A generator declared with an order-2 relator (`a a = 1` or `a^2 = 1`) is
//! involutive: its inverse is not listed separately in the symmetric set S.
//! Non-involutive generators contribute the S-index pair (2i-1, 2i) for
//! (a_i, a_i^-1) before the block of involutive generators.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub name: String,
    pub involutive: bool,
}

/// Word in the free group on the declared generators.
///
/// Letters are `(generator index, exponent)` with exponent in `{+1, -1}`;
/// exponent -1 never occurs on an involutive generator (normalized to +1 on
/// construction).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<(u16, i8)>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// Raw constructor; exponents must be +1 or -1.
    pub fn from_letters(letters: Vec<(u16, i8)>) -> Self {
        debug_assert!(letters.iter().all(|&(_, e)| e == 1 || e == -1));
        FreeWord { letters }
    }

    pub fn letters(&self) -> &[(u16, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    /// Formal inverse (involutive generators keep exponent +1).
    pub fn inverse(&self, gens: &[GeneratorSymbol]) -> FreeWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|&(g, e)| if gens[g as usize].involutive { (g, 1) } else { (g, -e) })
            .collect();
        FreeWord { letters }
    }
}

/// Remove adjacent cancelling pairs to a fixpoint and normalize involutive
/// exponents to +1. Cancelling pairs are `x x^-1` on non-involutive
/// generators only; `a a` on an involutive generator is relator-trivial,
/// not freely trivial, and is kept.
pub fn free_reduce(w: &FreeWord, gens: &[GeneratorSymbol]) -> FreeWord {
    let mut stack: Vec<(u16, i8)> = Vec::with_capacity(w.letters.len());
    for &(g, e) in &w.letters {
        let e = if gens[g as usize].involutive { 1 } else { e };
        match stack.last() {
            Some(&(h, f)) if h == g && !gens[g as usize].involutive && f == -e => {
                stack.pop();
            }
            _ => stack.push((g, e)),
        }
    }
    FreeWord { letters: stack }
}

/// The symmetric generating set S with its index map and inverse involution.
///
/// S-indices are 0-based internally. `letters[s]` is the `(generator,
/// exponent)` the index stands for, `inv[s]` pairs each index with its
/// inverse (fixed points exactly at involutive generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricIndex {
    pub letters: Vec<(u16, i8)>,
    pub inv: Vec<usize>,
}

impl SymmetricIndex {
    pub fn size(&self) -> usize {
        self.letters.len()
    }

    /// S-index of a single letter.
    pub fn index_of(&self, gen: u16, exp: i8) -> usize {
        self.letters
            .iter()
            .position(|&(g, e)| g == gen && e == exp)
            .expect("letter not in symmetric set")
    }

    /// Word as a sequence of S-indices.
    pub fn word_indices(&self, w: &FreeWord) -> Vec<usize> {
        w.letters().iter().map(|&(g, e)| self.index_of(g, e)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    /// Relation source text, e.g. `"A Q = Q A"` or `"C = 0"`.
    pub relation: String,
    pub provenance: String,
}

/// Backend descriptor as written in the DSL; the word-problem module turns
/// it into an executable backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendSpec {
    Cyclic(u32),
    FreeProduct(Vec<BackendSpec>),
    DirectProduct(Vec<BackendSpec>),
    /// `semidirect(m, n, u)`: Z_m x| Z_n with h^-1 g h = g^u.
    Semidirect(u32, u32, u32),
    Lamplighter,
    Braid(u32),
    /// String rewriting rules over generator names, e.g. `"aa" -> ""`.
    Rewriting(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub name: String,
    pub generators: Vec<GeneratorSymbol>,
    /// Relators stored as equalities `w1 = w2`.
    pub relators: Vec<(FreeWord, FreeWord)>,
    pub backend: Option<BackendSpec>,
    pub assumptions: Vec<Assumption>,
}

impl GroupPresentation {
    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    /// Single-word relator forms `w1 w2^-1`, freely reduced.
    pub fn relator_words(&self) -> Vec<FreeWord> {
        self.relators
            .iter()
            .map(|(a, b)| free_reduce(&a.concat(&b.inverse(&self.generators)), &self.generators))
            .collect()
    }

    /// Deterministic S-index layout: non-involutive generators first, each
    /// contributing the pair (a_i, a_i^-1), then involutive generators.
    pub fn symmetric_index(&self) -> SymmetricIndex {
        let mut letters = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if !g.involutive {
                letters.push((i as u16, 1));
                letters.push((i as u16, -1));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.involutive {
                letters.push((i as u16, 1));
            }
        }
        let inv = letters
            .iter()
            .map(|&(g, e)| {
                letters
                    .iter()
                    .position(|&(h, f)| h == g && (f == -e || self.generators[g as usize].involutive))
                    .unwrap()
            })
            .collect();
        SymmetricIndex { letters, inv }
    }

    /// Canonical DSL rendering; `parse(render(p)) == p`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {}", self.name);
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let _ = writeln!(out, "generators {}", names.join(" "));
        if !self.relators.is_empty() {
            let rels: Vec<String> = self
                .relators
                .iter()
                .map(|(a, b)| format!("{} = {}", self.render_word(a), self.render_word(b)))
                .collect();
            let _ = writeln!(out, "relations {}", rels.join(", "));
        }
        if let Some(b) = &self.backend {
            let _ = writeln!(out, "backend {}", render_backend(b));
        }
        for a in &self.assumptions {
            let _ = writeln!(out, "assume rel \"{}\" provenance \"{}\"", a.relation, a.provenance);
        }
        out
    }

    pub fn render_word(&self, w: &FreeWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        let ls = w.letters();
        while i < ls.len() {
            let (g, e) = ls[i];
            let mut run = 1;
            while i + run < ls.len() && ls[i + run] == (g, e) {
                run += 1;
            }
            let name = &self.generators[g as usize].name;
            let exp = run as i64 * e as i64;
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

fn render_backend(b: &BackendSpec) -> String {
    match b {
        BackendSpec::Cyclic(s) => format!("cyclic({s})"),
        BackendSpec::FreeProduct(parts) => {
            let inner: Vec<String> = parts.iter().map(render_backend).collect();
            format!("freeprod({})", inner.join(","))
        }
        BackendSpec::DirectProduct(parts) => {
            let inner: Vec<String> = parts.iter().map(render_backend).collect();
            format!("product({})", inner.join(","))
        }
        BackendSpec::Semidirect(m, n, u) => format!("semidirect({m},{n},{u})"),
        BackendSpec::Lamplighter => "lamplighter".into(),
        BackendSpec::Braid(n) => format!("braid({n})"),
        BackendSpec::Rewriting(rules) => {
            let inner: Vec<String> = rules
                .iter()
                .map(|(l, r)| format!("\"{l}\"->\"{r}\""))
                .collect();
            format!("rewriting{{{}}}", inner.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
    Arrow,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let bump = |ch: char, line: &mut usize, col: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            '#' => {
                while let Some(&d) = chars.peek() {
                    chars.next();
                    bump(d, &mut line, &mut col);
                    if d == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '"' => {
                chars.next();
                bump('"', &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => {
                            return Err(ParseError {
                                line: l0,
                                col: c0,
                                message: "unterminated string literal".into(),
                            })
                        }
                        Some('"') => {
                            bump('"', &mut line, &mut col);
                            break;
                        }
                        Some(d) => {
                            bump(d, &mut line, &mut col);
                            s.push(d);
                        }
                    }
                }
                toks.push((Tok::Str(s), l0, c0));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), l0, c0));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let v = s.parse().map_err(|_| ParseError {
                    line: l0,
                    col: c0,
                    message: format!("integer out of range: {s}"),
                })?;
                toks.push((Tok::Int(v), l0, c0));
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut col);
                    toks.push((Tok::Arrow, l0, c0));
                } else {
                    let mut s = String::from("-");
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            chars.next();
                            bump(d, &mut line, &mut col);
                        } else {
                            break;
                        }
                    }
                    if s == "-" {
                        return Err(ParseError {
                            line: l0,
                            col: c0,
                            message: "expected digits after '-'".into(),
                        });
                    }
                    let v = s.parse().map_err(|_| ParseError {
                        line: l0,
                        col: c0,
                        message: format!("integer out of range: {s}"),
                    })?;
                    toks.push((Tok::Int(v), l0, c0));
                }
            }
            '(' | ')' | ',' | '=' | '^' | '{' | '}' => {
                chars.next();
                bump(c, &mut line, &mut col);
                toks.push((Tok::Punct(c), l0, c0));
            }
            other => {
                return Err(ParseError {
                    line: l0,
                    col: c0,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn loc(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.loc();
        ParseError { line, col, message: message.into() }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                Err(self.err("expected identifier"))
            }
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        match self.next() {
            Some(Tok::Punct(d)) if d == c => Ok(()),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected '{c}'")))
            }
        }
    }

    fn expect_int(&mut self) -> Result<i64, ParseError> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            _ => {
                self.pos -= 1;
                Err(self.err("expected integer"))
            }
        }
    }
}

/// Parse and validate DSL source.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let mut lx = lex(text)?;
    let name;
    let mut generators: Vec<GeneratorSymbol> = Vec::new();
    // (gen name words, loc) collected first; resolved after generators known.
    let mut raw_relations: Vec<(Vec<(String, i64, usize, usize)>, Vec<(String, i64, usize, usize)>)> =
        Vec::new();
    let mut backend = None;
    let mut assumptions = Vec::new();

    match lx.peek() {
        Some(Tok::Ident(k)) if k == "group" => {
            lx.next();
            name = lx.expect_ident()?;
        }
        _ => return Err(lx.err("file must start with 'group <name>'")),
    };

    while let Some(tok) = lx.peek().cloned() {
        match tok {
            Tok::Ident(k) if k == "generators" => {
                lx.next();
                loop {
                    match lx.peek() {
                        Some(Tok::Ident(s))
                            if !matches!(
                                s.as_str(),
                                "generators" | "relations" | "backend" | "assume" | "group"
                            ) =>
                        {
                            let s = s.clone();
                            lx.next();
                            if generators.iter().any(|g| g.name == s) {
                                return Err(lx.err(format!("duplicate generator name '{s}'")));
                            }
                            generators.push(GeneratorSymbol { name: s, involutive: false });
                        }
                        _ => break,
                    }
                }
                if generators.is_empty() {
                    return Err(lx.err("'generators' declares no names"));
                }
            }
            Tok::Ident(k) if k == "relations" => {
                lx.next();
                loop {
                    let lhs = parse_raw_word(&mut lx)?;
                    lx.expect_punct('=')?;
                    let rhs = parse_raw_word(&mut lx)?;
                    raw_relations.push((lhs, rhs));
                    if lx.peek() == Some(&Tok::Punct(',')) {
                        lx.next();
                    } else {
                        break;
                    }
                }
            }
            Tok::Ident(k) if k == "backend" => {
                lx.next();
                backend = Some(parse_backend(&mut lx)?);
            }
            Tok::Ident(k) if k == "assume" => {
                lx.next();
                let kw = lx.expect_ident()?;
                if kw != "rel" {
                    return Err(lx.err("expected 'rel' after 'assume'"));
                }
                let relation = match lx.next() {
                    Some(Tok::Str(s)) => s,
                    _ => return Err(lx.err("expected quoted relation")),
                };
                let kw = lx.expect_ident()?;
                if kw != "provenance" {
                    return Err(lx.err("expected 'provenance'"));
                }
                let provenance = match lx.next() {
                    Some(Tok::Str(s)) => s,
                    _ => return Err(lx.err("expected quoted provenance")),
                };
                if provenance.is_empty() {
                    return Err(lx.err("provenance must be non-empty"));
                }
                assumptions.push(Assumption { relation, provenance });
            }
            _ => return Err(lx.err("expected 'generators', 'relations', 'backend' or 'assume'")),
        }
    }

    // Resolve raw words against the generator table.
    let resolve = |raw: &[(String, i64, usize, usize)]| -> Result<FreeWord, ParseError> {
        let mut letters = Vec::new();
        for (nm, exp, line, col) in raw {
            let gi = generators
                .iter()
                .position(|g| &g.name == nm)
                .ok_or_else(|| ParseError {
                    line: *line,
                    col: *col,
                    message: format!("undeclared generator '{nm}'"),
                })? as u16;
            let (rep, sign) = if *exp >= 0 { (*exp, 1i8) } else { (-*exp, -1i8) };
            for _ in 0..rep {
                letters.push((gi, sign));
            }
        }
        Ok(FreeWord { letters })
    };

    let mut relators = Vec::new();
    for (l, r) in &raw_relations {
        relators.push((resolve(l)?, resolve(r)?));
    }

    // Involutive detection: relator g g = 1 (in either orientation).
    for gi in 0..generators.len() {
        let is_sq = |w: &FreeWord| {
            w.letters().len() == 2
                && w.letters().iter().all(|&(g, e)| g as usize == gi && e.abs() == 1)
                && w.letters()[0].1 == w.letters()[1].1
        };
        if relators
            .iter()
            .any(|(a, b)| (is_sq(a) && b.is_empty()) || (is_sq(b) && a.is_empty()))
        {
            generators[gi].involutive = true;
        }
    }
    // Normalize involutive exponents in all relators.
    for (a, b) in &mut relators {
        for l in &mut a.letters {
            if generators[l.0 as usize].involutive {
                l.1 = 1;
            }
        }
        for l in &mut b.letters {
            if generators[l.0 as usize].involutive {
                l.1 = 1;
            }
        }
    }

    Ok(GroupPresentation { name, generators, relators, backend, assumptions })
}

fn parse_raw_word(lx: &mut Lexer) -> Result<Vec<(String, i64, usize, usize)>, ParseError> {
    if let Some(Tok::Int(1)) = lx.peek() {
        lx.next();
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        match lx.peek() {
            Some(Tok::Ident(s))
                if !matches!(
                    s.as_str(),
                    "generators" | "relations" | "backend" | "assume" | "group"
                ) =>
            {
                let s = s.clone();
                let (line, col) = lx.loc();
                lx.next();
                let mut exp = 1i64;
                if lx.peek() == Some(&Tok::Punct('^')) {
                    lx.next();
                    exp = lx.expect_int()?;
                }
                out.push((s, exp, line, col));
            }
            _ => break,
        }
    }
    if out.is_empty() {
        return Err(lx.err("expected a word"));
    }
    Ok(out)
}

fn parse_backend(lx: &mut Lexer) -> Result<BackendSpec, ParseError> {
    let head = lx.expect_ident()?;
    match head.as_str() {
        "cyclic" => {
            lx.expect_punct('(')?;
            let s = lx.expect_int()?;
            lx.expect_punct(')')?;
            if s < 0 {
                return Err(lx.err("cyclic order must be >= 0"));
            }
            Ok(BackendSpec::Cyclic(s as u32))
        }
        "freeprod" | "product" => {
            lx.expect_punct('(')?;
            let mut parts = vec![parse_backend(lx)?];
            while lx.peek() == Some(&Tok::Punct(',')) {
                lx.next();
                parts.push(parse_backend(lx)?);
            }
            lx.expect_punct(')')?;
            if head == "freeprod" {
                Ok(BackendSpec::FreeProduct(parts))
            } else {
                Ok(BackendSpec::DirectProduct(parts))
            }
        }
        "semidirect" => {
            lx.expect_punct('(')?;
            let m = lx.expect_int()?;
            lx.expect_punct(',')?;
            let n = lx.expect_int()?;
            lx.expect_punct(',')?;
            let u = lx.expect_int()?;
            lx.expect_punct(')')?;
            if m <= 0 || n <= 0 || u <= 0 {
                return Err(lx.err("semidirect parameters must be positive"));
            }
            Ok(BackendSpec::Semidirect(m as u32, n as u32, u as u32))
        }
        "lamplighter" => Ok(BackendSpec::Lamplighter),
        "braid" => {
            lx.expect_punct('(')?;
            let n = lx.expect_int()?;
            lx.expect_punct(')')?;
            if n < 2 {
                return Err(lx.err("braid index must be >= 2"));
            }
            Ok(BackendSpec::Braid(n as u32))
        }
        "rewriting" => {
            lx.expect_punct('{')?;
            let mut rules = Vec::new();
            if lx.peek() != Some(&Tok::Punct('}')) {
                loop {
                    let l = match lx.next() {
                        Some(Tok::Str(s)) => s,
                        _ => return Err(lx.err("expected quoted rule lhs")),
                    };
                    match lx.next() {
                        Some(Tok::Arrow) => {}
                        _ => return Err(lx.err("expected '->'")),
                    }
                    let r = match lx.next() {
                        Some(Tok::Str(s)) => s,
                        _ => return Err(lx.err("expected quoted rule rhs")),
                    };
                    rules.push((l, r));
                    if lx.peek() == Some(&Tok::Punct(',')) {
                        lx.next();
                    } else {
                        break;
                    }
                }
            }
            lx.expect_punct('}')?;
            Ok(BackendSpec::Rewriting(rules))
        }
        other => Err(lx.err(format!("unknown backend '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b4() -> GroupPresentation {
        parse_presentation(
            "group b4\ngenerators a b c\nrelations a c = c a, a b a = b a b, c b c = b c b\nbackend braid(4)\n",
        )
        .unwrap()
    }

    #[test]
    fn parse_braid_presentation() {
        let p = b4();
        assert_eq!(p.generators.len(), 3);
        assert!(p.generators.iter().all(|g| !g.involutive));
        assert_eq!(p.symmetric_index().size(), 6);
        assert_eq!(p.relators.len(), 3);
    }

    #[test]
    fn parse_single_involutive() {
        let p = parse_presentation("group z2\ngenerators a\nrelations a a = 1\n").unwrap();
        assert!(p.generators[0].involutive);
        assert_eq!(p.symmetric_index().size(), 1);
        let si = p.symmetric_index();
        assert_eq!(si.inv, vec![0]);
    }

    #[test]
    fn parse_semidirect_presentation() {
        let p = parse_presentation(
            "group z9z3\ngenerators g h\nrelations g^9 = 1, h^3 = 1, h^-1 g h = g^4\nbackend semidirect(9,3,4)\n",
        )
        .unwrap();
        assert_eq!(p.symmetric_index().size(), 4);
        // power notation expands eagerly
        assert_eq!(p.relators[0].0.len(), 9);
        assert_eq!(p.relators[2].0.letters(), &[(1, -1), (0, 1), (1, 1)]);
        assert_eq!(p.backend, Some(BackendSpec::Semidirect(9, 3, 4)));
    }

    #[test]
    fn symmetric_index_b4() {
        let si = b4().symmetric_index();
        // 1-based convention (2i-1, 2i): 0-based inv = (01)(23)(45)
        assert_eq!(si.inv, vec![1, 0, 3, 2, 5, 4]);
        assert_eq!(si.letters[0], (0, 1));
        assert_eq!(si.letters[1], (0, -1));
    }

    #[test]
    fn symmetric_index_orders_noninvolutive_first() {
        let p = parse_presentation(
            "group lamp\ngenerators a t\nrelations a^2 = 1\nbackend lamplighter\n",
        )
        .unwrap();
        let si = p.symmetric_index();
        // t, t^-1, a
        assert_eq!(si.letters, vec![(1, 1), (1, -1), (0, 1)]);
        assert_eq!(si.inv, vec![1, 0, 2]);
    }

    #[test]
    fn free_reduce_examples() {
        let p = b4();
        let w = FreeWord { letters: vec![(0, 1), (0, -1), (1, 1)] };
        assert_eq!(free_reduce(&w, &p.generators).letters(), &[(1, 1)]);
        assert_eq!(free_reduce(&FreeWord::empty(), &p.generators), FreeWord::empty());

        let q = parse_presentation("group g\ngenerators a b\nrelations a a = 1\n").unwrap();
        let w = FreeWord { letters: vec![(0, -1), (1, 1)] };
        assert_eq!(free_reduce(&w, &q.generators).letters(), &[(0, 1), (1, 1)]);
        // involutive squares are relator-trivial, not freely trivial
        let w = FreeWord { letters: vec![(0, 1), (0, 1)] };
        assert_eq!(free_reduce(&w, &q.generators).len(), 2);
    }

    #[test]
    fn free_reduce_idempotent_on_random_words() {
        let p = b4();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let len = (rng() % 21) as usize;
            let letters: Vec<(u16, i8)> = (0..len)
                .map(|_| ((rng() % 3) as u16, if rng() % 2 == 0 { 1 } else { -1 }))
                .collect();
            let w = FreeWord { letters };
            let once = free_reduce(&w, &p.generators);
            let twice = free_reduce(&once, &p.generators);
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn inv_is_involution_with_fixed_points_at_involutive() {
        let p = parse_presentation(
            "group m\ngenerators x y z\nrelations y^2 = 1\n",
        )
        .unwrap();
        let si = p.symmetric_index();
        for s in 0..si.size() {
            assert_eq!(si.inv[si.inv[s]], s);
            let (g, _) = si.letters[s];
            assert_eq!(si.inv[s] == s, p.generators[g as usize].involutive);
        }
    }

    #[test]
    fn render_parse_round_trip() {
        for src in [
            "group b4\ngenerators a b c\nrelations a c = c a, a b a = b a b, c b c = b c b\nbackend braid(4)\nassume rel \"A Q = Q A\" provenance \"[qiso dual] Lemma 4.5\"\n",
            "group z9z3\ngenerators g h\nrelations g^9 = 1, h^3 = 1, h^-1 g h = g^4\nbackend semidirect(9,3,4)\n",
            "group w\ngenerators a c b\nrelations a^2 = 1, c^2 = 1, b^2 = 1, a b = b a, c b = b c\nbackend product(freeprod(cyclic(2),cyclic(2)),cyclic(2))\n",
            "group f\ngenerators a b\nbackend rewriting{}\n",
        ] {
            let p = parse_presentation(src).unwrap();
            let q = parse_presentation(&p.render()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn parse_errors_carry_location() {
        let e = parse_presentation("group g\ngenerators a\nrelations a = b\n").unwrap_err();
        assert!(e.message.contains("undeclared generator 'b'"));
        assert_eq!(e.line, 3);
        let e = parse_presentation("group g\ngenerators a a\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        assert!(parse_presentation("generators a\n").is_err());
    }
}
