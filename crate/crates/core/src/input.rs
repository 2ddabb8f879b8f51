//! Plain-text instance files.
//!
//! ```text
//! # comment
//! [group]
//! symmetric 3
//! [family]
//! (0 1)
//! (0 1 2)
//! [module]
//! invariants 3
//! sign
//! ```
//!
//! Group lines: `trivial`, `cyclic n`, `symmetric n`, `klein`,
//! `product <group> x <group>`, `permutations d : g ; g …`, or, in the
//! `[group]` section only, `table` followed by one row per line, or
//! `permutations d` followed by one generator per line. Points of
//! permutations are 0-based, in cycle form `(0 1)(2 3 4)` or one-line form `[1 0 2]`.
//!
//! Elements are written as indices or, in permutation groups, as permutations.
//! A `[family]` line lists generators of one member; `trivial` and `whole`
//! are accepted. `[module]` takes `invariants m_1 … m_r`, then any number of
//! `act <element> : <r·r entries, row-major>` lines and at most one `sign`
//! line (odd permutations, or the obvious sign character, act by −1).
//! `[cochain]` is a flat list of integers: a peripheral 1-cochain laid out as
//! `((g·N_c) + c)·r + k`. `[lifting]` takes `H <group>`, `Q <group>`,
//! `alpha <|H| images>`, `phi <|G| images>` and one `sigma <images>` line per
//! member, listing images of the member's elements in increasing index order.

use std::fmt;
use std::sync::Arc;

use crate::catalog::sign_character;
use crate::error::Error;
use crate::group::{parse_permutation, FiniteGroup, GroupPair, Subgroup};
use crate::lifting::LiftingProblem;
use crate::module::{AbelianGroup, GModule};

const PERMUTATION_CAP: usize = 1 << 16;

/// An input error with the 1-based line it was detected on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

fn err(line: usize, message: impl Into<String>) -> InputError {
    InputError { line: Some(line), message: message.into() }
}

fn domain(line: usize) -> impl Fn(Error) -> InputError {
    move |e| err(line, e.to_string())
}

type Lines<'a> = Vec<(usize, &'a str)>;

/// A parsed instance: a pair plus optional payloads.
#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub pair: GroupPair,
    pub module: Option<GModule>,
    pub cochain: Option<Vec<i64>>,
    pub lifting: Option<LiftingProblem>,
}

impl InstanceFile {
    pub fn module(&self) -> Result<&GModule, InputError> {
        self.module.as_ref().ok_or_else(|| InputError { line: None, message: "missing [module] section".into() })
    }

    pub fn lifting(&self) -> Result<&LiftingProblem, InputError> {
        self.lifting.as_ref().ok_or_else(|| InputError { line: None, message: "missing [lifting] section".into() })
    }
}

/// Splits on whitespace, keeping `(…)` and `[…]` groups (and runs of adjacent cycles) together.
pub fn tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, InputError> {
    tok.parse().map_err(|_| err(line, format!("expected an integer, found `{tok}`")))
}

fn ints(text: &str, line: usize) -> Result<Vec<i64>, InputError> {
    text.split_whitespace().map(|t| parse_int(t, line)).collect()
}

/// Resolves an index or a permutation to an element.
pub fn parse_element(group: &FiniteGroup, tok: &str, line: usize) -> Result<usize, InputError> {
    if tok.starts_with('(') || tok.starts_with('[') {
        let perms = group.permutations().ok_or_else(|| err(line, format!("`{tok}`: not a permutation group")))?;
        let degree = perms[0].len();
        let p = parse_permutation(tok, degree).map_err(domain(line))?;
        return group.find_permutation(&p).ok_or_else(|| err(line, format!("{tok} is not in the group")));
    }
    let x: usize = parse_int(tok, line)?;
    group.check_element(x).map_err(domain(line))?;
    Ok(x)
}

/// A one-line group description.
pub fn parse_group_line(text: &str, line: usize) -> Result<FiniteGroup, InputError> {
    let text = text.trim();
    if let Some((a, b)) = split_product(text) {
        let left = parse_group_line(a, line)?;
        let right = parse_group_line(b, line)?;
        return Ok(FiniteGroup::direct_product(&left, &right));
    }
    let mut words = text.split_whitespace();
    let head = words.next().ok_or_else(|| err(line, "empty group description"))?;
    let arg = |w: Option<&str>| -> Result<usize, InputError> {
        let w = w.ok_or_else(|| err(line, format!("`{head}` needs a size")))?;
        let n: usize = parse_int(w, line)?;
        if n == 0 {
            return Err(err(line, "size must be positive"));
        }
        Ok(n)
    };
    match head {
        "trivial" => Ok(FiniteGroup::trivial()),
        "cyclic" => Ok(FiniteGroup::cyclic(arg(words.next())?)),
        "symmetric" => {
            let n = arg(words.next())?;
            if n > 7 {
                return Err(err(line, "symmetric groups above degree 7 are not supported"));
            }
            Ok(FiniteGroup::symmetric(n))
        }
        "klein" => Ok(crate::catalog::klein_four()),
        "permutations" => {
            let (d, gens) = text["permutations".len()..].split_once(':').unwrap_or((&text["permutations".len()..], ""));
            let degree = arg(d.split_whitespace().next())?;
            let gens: Vec<&str> = gens.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            permutation_group(degree, &gens, line)
        }
        other => Err(err(line, format!("unknown group `{other}`"))),
    }
}

fn split_product(text: &str) -> Option<(&str, &str)> {
    let rest = text.strip_prefix("product")?;
    rest.split_once(" x ")
}

fn permutation_group(degree: usize, gens: &[&str], line: usize) -> Result<FiniteGroup, InputError> {
    let perms = gens.iter().map(|g| parse_permutation(g, degree)).collect::<Result<Vec<_>, _>>().map_err(domain(line))?;
    FiniteGroup::from_permutations(degree, &perms, PERMUTATION_CAP).map_err(domain(line))
}

fn parse_group(lines: &Lines, header: usize) -> Result<FiniteGroup, InputError> {
    let (first_line, first) = *lines.first().ok_or_else(|| err(header, "[group] is empty"))?;
    let mut words = first.split_whitespace();
    match words.next() {
        Some("table") => {
            let rows = lines[1..]
                .iter()
                .map(|&(l, t)| {
                    t.split_whitespace().map(|w| parse_int::<usize>(w, l)).collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_table(&rows).map_err(|e| {
                let row = match e {
                    Error::MalformedTable { row, .. } => Some(row),
                    Error::NoInverse { element } | Error::NoIdentity { element } => Some(element),
                    Error::NotAssociative { a, .. } => Some(a),
                    _ => None,
                };
                match row {
                    Some(row) => err(lines.get(row + 1).map_or(first_line, |x| x.0), format!("{e} (row {row})")),
                    None => err(first_line, e.to_string()),
                }
            })
        }
        Some("permutations") if lines.len() > 1 && !first.contains(':') => {
            let degree: usize = parse_int(words.next().unwrap_or(""), first_line)?;
            let gens: Vec<&str> = lines[1..].iter().map(|x| x.1).collect();
            permutation_group(degree, &gens, lines[1].0)
        }
        _ => {
            if lines.len() > 1 {
                return Err(err(lines[1].0, "unexpected extra line in [group]"));
            }
            parse_group_line(first, first_line)
        }
    }
}

fn parse_family(group: &Arc<FiniteGroup>, lines: &Lines, header: usize) -> Result<Vec<Subgroup>, InputError> {
    if lines.is_empty() {
        return Err(err(header, Error::EmptyFamily.to_string()));
    }
    lines
        .iter()
        .map(|&(l, t)| match t.trim() {
            "trivial" => Ok(Subgroup::trivial(group)),
            "whole" => Ok(Subgroup::whole(group)),
            t => {
                let gens = tokens(t).iter().map(|tok| parse_element(group, tok, l)).collect::<Result<Vec<_>, _>>()?;
                Subgroup::generated(group, &gens).map_err(domain(l))
            }
        })
        .collect()
}

fn parse_module(group: &Arc<FiniteGroup>, lines: &Lines, header: usize) -> Result<GModule, InputError> {
    let mut invariants = None;
    let mut acts: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut sign = None;
    for &(l, t) in lines {
        let t = t.trim();
        if let Some(rest) = t.strip_prefix("invariants") {
            invariants = Some((l, ints(rest, l)?));
        } else if let Some(rest) = t.strip_prefix("act") {
            let (el, mat) = rest.split_once(':').ok_or_else(|| err(l, "expected `act <element> : <entries>`"))?;
            let toks = tokens(el);
            let [tok] = toks.as_slice() else { return Err(err(l, "expected exactly one element before `:`")) };
            acts.push((parse_element(group, tok, l)?, ints(mat, l)?));
        } else if t == "sign" {
            sign = Some(l);
        } else {
            return Err(err(l, format!("unknown [module] line `{t}`")));
        }
    }
    let (inv_line, inv) = invariants.ok_or_else(|| err(header, "[module] needs an `invariants` line"))?;
    let base = AbelianGroup::new(inv).map_err(domain(inv_line))?;
    let r = base.rank();
    if let Some(l) = sign {
        if !acts.is_empty() {
            return Err(err(l, "`sign` cannot be combined with `act` lines"));
        }
        let chi = sign_character(group).ok_or_else(|| err(l, "no sign character known for this group"))?;
        let matrices = chi
            .iter()
            .map(|&c| {
                let mut m = vec![0i64; r * r];
                for j in 0..r {
                    m[j * r + j] = if c == 1 { -1 } else { 1 };
                }
                m
            })
            .collect();
        return GModule::new(base, group.clone(), matrices).map_err(domain(l));
    }
    let line = acts.first().map_or(inv_line, |_| header);
    let mut gens: Vec<usize> = acts.iter().map(|a| a.0).collect();
    let mut mats: Vec<Vec<i64>> = acts.into_iter().map(|a| a.1).collect();
    // elements outside the span of the listed ones act trivially
    let identity: Vec<i64> = (0..r * r).map(|k| i64::from(k / r.max(1) == k % r.max(1))).collect();
    for g in group.greedy_generators() {
        if !group.generate(&gens).contains(&g) {
            gens.push(g);
            mats.push(identity.clone());
        }
    }
    GModule::from_generator_actions(base, group.clone(), &gens, &mats).map_err(domain(line))
}

fn parse_lifting(pair: &GroupPair, lines: &Lines, header: usize) -> Result<LiftingProblem, InputError> {
    let mut h = None;
    let mut q = None;
    let mut alpha = None;
    let mut phi = None;
    let mut sigma = Vec::new();
    for &(l, t) in lines {
        let t = t.trim();
        let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match key {
            "H" => h = Some(Arc::new(parse_group_line(rest, l)?)),
            "Q" => q = Some(Arc::new(parse_group_line(rest, l)?)),
            "alpha" | "phi" | "sigma" => {
                let codomain = match key {
                    "alpha" | "phi" => q.as_ref(),
                    _ => h.as_ref(),
                }
                .ok_or_else(|| err(l, format!("`{key}` must come after its codomain is declared")))?;
                let imgs = tokens(rest).iter().map(|tok| parse_element(codomain, tok, l)).collect::<Result<Vec<_>, _>>()?;
                match key {
                    "alpha" => alpha = Some(imgs),
                    "phi" => phi = Some(imgs),
                    _ => sigma.push(imgs),
                }
            }
            other => return Err(err(l, format!("unknown [lifting] key `{other}`"))),
        }
    }
    let missing = |what: &str| err(header, format!("[lifting] is missing `{what}`"));
    let h = h.ok_or_else(|| missing("H"))?;
    let q = q.ok_or_else(|| missing("Q"))?;
    let alpha = alpha.ok_or_else(|| missing("alpha"))?;
    let phi = phi.ok_or_else(|| missing("phi"))?;
    LiftingProblem::new(pair.clone(), h, q, alpha, phi, sigma).map_err(domain(header))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, InputError> {
    let mut sections: Vec<(String, usize, Lines)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let l = k + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if !["group", "family", "module", "cochain", "lifting"].contains(&name) {
                return Err(err(l, format!("unknown section [{name}]")));
            }
            if sections.iter().any(|s| s.0 == name) {
                return Err(err(l, format!("duplicate section [{name}]")));
            }
            sections.push((name.to_string(), l, Vec::new()));
        } else {
            let last = sections.last_mut().ok_or_else(|| err(l, "text before the first section"))?;
            last.2.push((l, t));
        }
    }
    let get = |name: &str| sections.iter().find(|s| s.0 == name);
    let (_, gl, glines) = get("group").ok_or_else(|| InputError { line: None, message: "missing [group] section".into() })?;
    let group = Arc::new(parse_group(glines, *gl)?);
    let (_, fl, flines) =
        get("family").ok_or_else(|| InputError { line: None, message: "missing [family] section".into() })?;
    let family = parse_family(&group, flines, *fl)?;
    let pair = GroupPair::new(group.clone(), family).map_err(domain(*fl))?;
    let module = get("module").map(|(_, l, lines)| parse_module(&group, lines, *l)).transpose()?;
    let cochain = get("cochain")
        .map(|(_, _, lines)| -> Result<Vec<i64>, InputError> {
            Ok(lines.iter().map(|&(l, t)| ints(t, l)).collect::<Result<Vec<_>, _>>()?.concat())
        })
        .transpose()?;
    let lifting = get("lifting").map(|(_, l, lines)| parse_lifting(&pair, lines, *l)).transpose()?;
    Ok(InstanceFile { pair, module, cochain, lifting })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_keeps_cycles_together() {
        assert_eq!(tokens("0 (0 1)(2 3) [1 0 2]  5"), vec!["0", "(0 1)(2 3)", "[1 0 2]", "5"]);
    }

    #[test]
    fn parses_a_full_instance() {
        let text = "# S3 relative to a transposition\n[group]\nsymmetric 3\n[family]\n(0 1)\n\n[module]\ninvariants 3\nsign\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.pair.group().order(), 6);
        assert_eq!(parsed.pair.member(0).order(), 2);
        assert!(!parsed.module.unwrap().is_trivial_action());
    }

    #[test]
    fn tables_and_products() {
        let parsed = parse_instance("[group]\ntable\n0 1\n1 0\n[family]\ntrivial\nwhole\n").unwrap();
        assert_eq!(parsed.pair.family().len(), 2);
        let g = parse_group_line("product cyclic 2 x product cyclic 2 x cyclic 3", 1).unwrap();
        assert_eq!(g.order(), 12);
        let g = parse_group_line("permutations 4 : (0 1 2 3) ; (0 2)", 1).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn module_actions() {
        let text = "[group]\ncyclic 4\n[family]\n2\n[module]\ninvariants 5\nact 1 : 2\n";
        let m = parse_instance(text).unwrap().module.unwrap();
        assert_eq!(m.matrix(2), &[4]);
        let bad = "[group]\ncyclic 2\n[family]\n1\n[module]\ninvariants 5\nact 1 : 2\n";
        assert!(parse_instance(bad).is_err());
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_instance("[group]\ntable\n0 1\n1 1\n[family]\ntrivial\n").unwrap_err();
        assert_eq!(e.line, Some(4), "{e}");
        assert!(e.message.contains("row 1"), "{e}");
        let e = parse_instance("[group]\ncyclic 2\n[family]\n").unwrap_err();
        assert!(e.message.contains("empty"), "{e}");
        let e = parse_instance("[group]\ncyclic 2\n[family]\n7\n").unwrap_err();
        assert_eq!(e.line, Some(4));
        let e = parse_instance("[group]\ncyclic x\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_instance("[grup]\n").unwrap_err();
        assert_eq!(e.line, Some(1));
    }

    #[test]
    fn lifting_section() {
        let text = "[group]\ncyclic 2\n[family]\ntrivial\n[lifting]\nH cyclic 4\nQ cyclic 2\nalpha 0 1 0 1\nphi 0 1\nsigma 0\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.lifting().unwrap().kernel(), vec![0, 2]);
        let missing = "[group]\ncyclic 2\n[family]\ntrivial\n[lifting]\nH cyclic 4\n";
        assert!(parse_instance(missing).unwrap_err().message.contains("Q"));
    }
}
