use crate::error::{Error, Result};

/// A permutation of `{0..n-1}` in one-line form: `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert_perm(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub(crate) fn check_permutation(p: &[usize], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::NotAPermutation(format!(
            "{p:?} has length {} but the degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return Err(Error::NotAPermutation(format!("{p:?} is not a bijection")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Parses cycle form `(0 1)(2 3 4)`, one-line form `[1 0 2]`, or `()` for
/// the identity. Points are 0-based; the result has length `degree`.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Perm> {
    let t = text.trim();
    let bad = |why: &str| Error::NotAPermutation(format!("`{t}`: {why}"));
    if let Some(body) = t.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
        let p = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("expected integers")))
            .collect::<Result<Perm>>()?;
        check_permutation(&p, degree)?;
        return Ok(p);
    }
    let mut p = identity_perm(degree);
    let mut rest = t;
    let mut touched = vec![false; degree];
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("missing `)`"))?;
        let cycle = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("expected integers")))
            .collect::<Result<Vec<usize>>>()?;
        for &x in &cycle {
            if x >= degree {
                return Err(bad("point out of range"));
            }
            if touched[x] {
                return Err(bad("cycles are not disjoint"));
            }
            touched[x] = true;
        }
        for k in 0..cycle.len() {
            p[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_forms() {
        assert_eq!(parse_permutation("(0 1)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_permutation("(0 1 2)", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_permutation("(0 1)(2 3)", 4).unwrap(), vec![1, 0, 3, 2]);
        assert_eq!(parse_permutation("[2 0 1]", 3).unwrap(), vec![2, 0, 1]);
        assert_eq!(parse_permutation("()", 2).unwrap(), vec![0, 1]);
        assert!(parse_permutation("(0 3)", 3).is_err());
        assert!(parse_permutation("(0 1)(1 2)", 3).is_err());
        assert!(parse_permutation("[0 0 1]", 3).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let p = vec![1, 2, 0];
        let q = vec![1, 0, 2];
        assert_eq!(compose(&p, &q), vec![2, 1, 0]);
        assert_eq!(compose(&p, &invert_perm(&p)), identity_perm(3));
    }
}
