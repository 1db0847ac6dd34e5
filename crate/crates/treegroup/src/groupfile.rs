//! Text format for groups given by wreath recursions.
//!
//! ```text
//! # Grigorchuk's group
//! alphabet 2
//! gen a = (0 1)
//! gen b = (c, a)
//! gen c = (d, a)
//! gen d = (b, e)
//! ```
//!
//! A line `gen NAME = PERM? (EXPR, …, EXPR)` defines a generator; `state NAME
//! = …` defines an auxiliary state that may be referenced but is not a
//! generator. PERM is cycle notation; a parenthesised group containing
//! commas is the section tuple, indexed by input letter, and leaving it out
//! makes the element rooted. EXPR is `e` or a `*`-separated product of
//! `NAME` and `NAME^k`; the rightmost factor acts first. Names may refer to
//! each other recursively. `alphabet M` may be omitted when some line has a
//! section tuple.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groups::{GroupSpec, Word};
use crate::tree_core::{Automorphism, Machine, Perm};

/// Bound on the number of product-word states created while parsing.
pub const DEFAULT_WORD_STATE_CAP: usize = 100_000;

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '|' || c == '\'')
        && s != "e"
}

struct RawDef {
    line: usize,
    name: String,
    is_gen: bool,
    perm_text: String,
    tuple: Option<Vec<String>>,
}

/// Split `(0 1)(a, e)` into the cycle part and the optional tuple.
fn split_rhs(line: usize, rhs: &str) -> Result<(String, Option<Vec<String>>)> {
    let mut groups = Vec::new();
    let mut rest = rhs.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return perr(line, format!("expected `(` at `{rest}`"));
        }
        let Some(close) = rest.find(')') else { return perr(line, "unclosed parenthesis") };
        groups.push(&rest[1..close]);
        rest = rest[close + 1..].trim_start();
    }
    let mut perm = String::new();
    let mut tuple = None;
    for (k, g) in groups.iter().enumerate() {
        if g.contains(',') {
            if k + 1 != groups.len() {
                return perr(line, "the section tuple must come last");
            }
            tuple = Some(g.split(',').map(|x| x.trim().to_string()).collect());
        } else {
            perm.push('(');
            perm.push_str(g);
            perm.push(')');
        }
    }
    Ok((perm, tuple))
}

type Letter = (usize, i8);

fn parse_expr(line: usize, text: &str, names: &HashMap<String, usize>) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text.is_empty() {
        return perr(line, "empty section expression");
    }
    if text == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, k) = match factor.split_once('^') {
            Some((n, k)) => match k.trim().parse::<i64>() {
                Ok(k) => (n.trim(), k),
                Err(_) => return perr(line, format!("bad exponent in `{factor}`")),
            },
            None => (factor, 1),
        };
        if name == "e" {
            continue;
        }
        let Some(&q) = names.get(name) else { return perr(line, format!("unknown name `{name}`")) };
        let e: i8 = if k < 0 { -1 } else { 1 };
        for _ in 0..k.unsigned_abs() {
            push_reduced(&mut word, (q, e));
        }
    }
    Ok(word)
}

fn push_reduced(w: &mut Vec<Letter>, l: Letter) {
    match w.last() {
        Some(&(q, e)) if q == l.0 && e == -l.1 => {
            w.pop();
        }
        _ => w.push(l),
    }
}

fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(q, e)| (q, -e)).collect()
}

/// Parse a group file into a GroupSpec.
pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    parse_group_file_capped(text, DEFAULT_WORD_STATE_CAP)
}

pub fn parse_group_file_capped(text: &str, state_cap: usize) -> Result<GroupSpec> {
    let mut m: Option<usize> = None;
    let mut defs: Vec<RawDef> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match kw {
            "alphabet" => {
                if m.is_some() || !defs.is_empty() {
                    return perr(line, "`alphabet` must come once, before any definition");
                }
                match rest.trim().parse::<usize>() {
                    Ok(x) if x >= 2 => m = Some(x),
                    _ => return perr(line, format!("bad alphabet size `{}`", rest.trim())),
                }
            }
            "gen" | "state" => {
                let Some((name, rhs)) = rest.split_once('=') else { return perr(line, "expected `NAME = …`") };
                let name = name.trim();
                if !valid_name(name) {
                    return perr(line, format!("invalid name `{name}`"));
                }
                if defs.iter().any(|d| d.name == name) {
                    return perr(line, format!("`{name}` defined twice"));
                }
                let (perm_text, tuple) = split_rhs(line, rhs)?;
                defs.push(RawDef { line, name: name.to_string(), is_gen: kw == "gen", perm_text, tuple });
            }
            _ => return perr(line, format!("unknown keyword `{kw}`")),
        }
    }
    if !defs.iter().any(|d| d.is_gen) {
        return perr(text.lines().count().max(1), "no generators defined");
    }
    let m = match m.or_else(|| defs.iter().find_map(|d| d.tuple.as_ref().map(Vec::len))) {
        Some(m) if m >= 2 => m,
        _ => return perr(defs[0].line, "alphabet size unknown: add `alphabet M` or a section tuple"),
    };

    let names: HashMap<String, usize> = defs.iter().enumerate().map(|(k, d)| (d.name.clone(), k)).collect();
    let mut perms = Vec::with_capacity(defs.len());
    let mut sections: Vec<Vec<Vec<Letter>>> = Vec::with_capacity(defs.len());
    for d in &defs {
        let p = Perm::parse_cycles(m, &d.perm_text).or_else(|e| perr(d.line, e.to_string()))?;
        let secs = match &d.tuple {
            None => vec![Vec::new(); m],
            Some(t) if t.len() != m => return perr(d.line, format!("{} sections given, alphabet has {m} letters", t.len())),
            Some(t) => t.iter().map(|x| parse_expr(d.line, x, &names)).collect::<Result<_>>()?,
        };
        perms.push(p);
        sections.push(secs);
    }

    // states are reduced words in the defined names; the empty word is the
    // identity
    let mut mach = Machine::new(m);
    let mut index: HashMap<Vec<Letter>, usize> = HashMap::new();
    index.insert(Vec::new(), mach.identity_state());
    let state_of = |w: Vec<Letter>,
                    mach: &mut Machine,
                    index: &mut HashMap<Vec<Letter>, usize>,
                    queue: &mut VecDeque<(Vec<Letter>, usize)>|
     -> Result<usize> {
        if let Some(&q) = index.get(&w) {
            return Ok(q);
        }
        if index.len() > state_cap {
            return Err(Error::Resource(format!("more than {state_cap} product states while parsing")));
        }
        let q = mach.add_placeholder();
        index.insert(w.clone(), q);
        queue.push_back((w, q));
        Ok(q)
    };
    let mut queue = VecDeque::new();
    let roots: Vec<usize> = (0..defs.len())
        .map(|k| state_of(vec![(k, 1)], &mut mach, &mut index, &mut queue))
        .collect::<Result<_>>()?;
    while let Some((w, q)) = queue.pop_front() {
        let mut perm = Perm::identity(m);
        for &(k, e) in w.iter().rev() {
            let p = if e > 0 { perms[k].clone() } else { perms[k].inverse() };
            perm = p.compose(&perm);
        }
        let mut next = Vec::with_capacity(m);
        for x in 0..m {
            // w = f_1 ⋯ f_r, f_r acting first: w|_x = f_1|_{x_1} ⋯ f_r|_{x_r}
            let mut y = x;
            let mut parts: Vec<Vec<Letter>> = Vec::with_capacity(w.len());
            for &(k, e) in w.iter().rev() {
                if e > 0 {
                    parts.push(sections[k][y].clone());
                    y = perms[k].apply(y);
                } else {
                    let z = perms[k].inverse().apply(y);
                    parts.push(invert_word(&sections[k][z]));
                    y = z;
                }
            }
            let mut sec = Vec::new();
            for part in parts.iter().rev() {
                for &l in part {
                    push_reduced(&mut sec, l);
                }
            }
            next.push(state_of(sec, &mut mach, &mut index, &mut queue)?);
        }
        mach.set(q, perm, next);
    }
    let mut gens = Vec::new();
    for (k, d) in defs.iter().enumerate() {
        if d.is_gen {
            gens.push((d.name.clone(), mach.automorphism(roots[k])?));
        }
    }
    GroupSpec::new(m, gens)
}

/// Parse `e` or a `*`-separated product of `NAME` and `NAME^k` over the
/// generators of g. As in section expressions, the rightmost factor acts first.
pub fn parse_word(g: &GroupSpec, text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Input("empty word".into()));
    }
    let mut word: Word = Vec::new();
    if text == "e" {
        return Ok(word);
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, k) = match factor.split_once('^') {
            Some((n, k)) => match k.trim().parse::<i64>() {
                Ok(k) => (n.trim(), k),
                Err(_) => return Err(Error::Input(format!("bad exponent in `{factor}`"))),
            },
            None => (factor, 1),
        };
        if name == "e" {
            continue;
        }
        let Some(idx) = g.index_of(name) else { return Err(Error::Input(format!("unknown generator `{name}`"))) };
        word.push((idx, k));
    }
    Ok(word)
}

/// Write a GroupSpec as a group file that parses back to equal generators.
/// Sections that are generators or their inverses are written by name;
/// other states get `state` lines.
pub fn emit_group_file(g: &GroupSpec) -> String {
    let m = g.m();
    let mut names: BTreeMap<Automorphism, String> = BTreeMap::new();
    names.insert(Automorphism::identity(m), "e".into());
    for (n, h) in g.named() {
        names.entry(h.clone()).or_insert_with(|| n.clone());
    }
    for (n, h) in g.named() {
        names.entry(h.inverse()).or_insert_with(|| format!("{n}^-1"));
    }
    let taken: std::collections::HashSet<&str> = g.names().collect();
    let mut fresh = 0usize;
    let mut aux: Vec<(String, Automorphism)> = Vec::new();
    let mut lines = vec![format!("alphabet {m}")];
    let mut bodies: Vec<(String, bool, Automorphism)> = g.named().iter().map(|(n, h)| (n.clone(), true, h.clone())).collect();
    for h in g.generators() {
        for q in 0..h.num_states() {
            let sec = h.at_state(q);
            if !names.contains_key(&sec) {
                let name = loop {
                    let cand = format!("q{fresh}");
                    fresh += 1;
                    if !taken.contains(cand.as_str()) {
                        break cand;
                    }
                };
                names.insert(sec.clone(), name.clone());
                aux.push((name, sec.clone()));
            }
        }
    }
    bodies.extend(aux.into_iter().map(|(n, h)| (n, false, h)));
    for (name, is_gen, h) in bodies {
        let (p, secs) = h.decompose();
        let mut rhs = String::new();
        if !p.is_identity() || secs.iter().all(Automorphism::is_identity) {
            rhs.push_str(&p.to_string());
        }
        if !secs.iter().all(Automorphism::is_identity) {
            let parts: Vec<&str> = secs.iter().map(|s| names[s].as_str()).collect();
            rhs.push_str(&format!("({})", parts.join(", ")));
        }
        lines.push(format!("{} {name} = {rhs}", if is_gen { "gen" } else { "state" }));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn odometer_line() {
        let g = parse_group_file("gen a = (0 1)(a, e)\n").unwrap();
        assert_eq!(g, zoo::odometer(2));
    }

    #[test]
    fn grigorchuk_file() {
        let text = "# Grigorchuk\ngen a = (0 1)\ngen b = (c, a)\ngen c = (d, a)\ngen d = (b, e)\n";
        assert_eq!(parse_group_file(text).unwrap(), zoo::grigorchuk());
    }

    #[test]
    fn products_and_powers() {
        let text = "alphabet 3\ngen a = (0 1 2)\ngen b = (b, a, a^-1)\ngen c = (b*a, e, a^2)\n";
        let g = parse_group_file(text).unwrap();
        let (a, b) = (g.generator(0).clone(), g.generator(1).clone());
        assert_eq!(g.generator(1), zoo::gupta_sidki(3).unwrap().generator(1));
        let c = Automorphism::from_wreath(&Perm::identity(3), &[b.compose(&a).unwrap(), Automorphism::identity(3), a.pow(2).unwrap()]).unwrap();
        assert_eq!(g.generator(2), &c);
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse_group_file(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_group_file("gen a = (0 1)(z, e)"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_group_file("alphabet 2\n\ngen a = (a, e, e)"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_group_file("alphabet 2\ngen a = (0 5)"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group_file("gen a = (0 1)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        for g in [zoo::grigorchuk(), zoo::gupta_sidki(3).unwrap(), zoo::generalised_basilica(2, 3, 2).unwrap(), zoo::fabrykowski_gupta()] {
            let text = emit_group_file(&g);
            assert_eq!(parse_group_file(&text).unwrap(), g, "{text}");
        }
    }

    #[test]
    fn words_over_generators() {
        let g = crate::zoo::grigorchuk();
        let w = parse_word(&g, "a*b^-2 * e").unwrap();
        assert_eq!(w, vec![(g.index_of("a").unwrap(), 1), (g.index_of("b").unwrap(), -2)]);
        assert!(parse_word(&g, "e").unwrap().is_empty());
        assert!(parse_word(&g, "x").is_err());
        assert!(parse_word(&g, "a^y").is_err());
    }
}
