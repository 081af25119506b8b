//! Words in a group's generators: `g0*g1^2`, `g2^-1`, or `1` for the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: vec![] }
    }

    pub fn generator(i: usize) -> Self {
        Word { letters: vec![(i, 1)] }
    }

    pub fn eval(&self, g: &FiniteGroup) -> Result<usize> {
        let gens = g.generator_indices();
        let mut acc = g.identity();
        for &(i, e) in &self.letters {
            let x = *gens.get(i).ok_or_else(|| {
                Error::InvalidParams(format!("generator g{i} does not exist (group has {})", gens.len()))
            })?;
            acc = g.mul(acc, g.pow(x, e));
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{i}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::parse(0, "empty word"));
        }
        if chars.len() == 1 && chars[0].1 == '1' {
            return Ok(Word::identity());
        }
        let mut pos = 0;
        let mut letters = Vec::new();
        let at = |pos: usize| chars.get(pos).map_or(s.len(), |c| c.0);
        loop {
            match chars.get(pos) {
                Some((_, 'g')) => pos += 1,
                _ => return Err(Error::parse(at(pos), "expected generator `g<i>`")),
            }
            let idx =
                read_int(&chars, &mut pos, false).ok_or_else(|| Error::parse(at(pos), "expected generator index"))?;
            let idx = usize::try_from(idx).map_err(|_| Error::parse(at(pos), "generator index out of range"))?;
            let mut exp = 1i64;
            if let Some((_, '^')) = chars.get(pos) {
                pos += 1;
                exp = read_int(&chars, &mut pos, true).ok_or_else(|| Error::parse(at(pos), "expected exponent"))?;
            }
            letters.push((idx, exp));
            match chars.get(pos) {
                None => break,
                Some((_, '*')) => pos += 1,
                Some((i, c)) => return Err(Error::parse(*i, format!("unexpected `{c}`"))),
            }
        }
        Ok(Word { letters })
    }
}

fn read_int(chars: &[(usize, char)], pos: &mut usize, signed: bool) -> Option<i64> {
    let mut neg = false;
    if signed {
        if let Some((_, '-')) = chars.get(*pos) {
            neg = true;
            *pos += 1;
        }
    }
    let start = *pos;
    let mut v: i64 = 0;
    while let Some((_, c)) = chars.get(*pos) {
        if !c.is_ascii_digit() {
            break;
        }
        v = v.checked_mul(10)?.checked_add(c.to_digit(10)? as i64)?;
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let w: Word = "g0*g1^2".parse().unwrap();
        assert_eq!(w.letters, vec![(0, 1), (1, 2)]);
        let w: Word = " g2 ^ -1 * g0 ".parse().unwrap();
        assert_eq!(w.letters, vec![(2, -1), (0, 1)]);
        assert_eq!("1".parse::<Word>().unwrap(), Word::identity());
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "g", "g0*", "h0", "g0^", "g0^^2", "g99999999999999999999", "g0 g1", "g٣"] {
            assert!(bad.parse::<Word>().is_err(), "{bad:?} should fail");
        }
    }
}
