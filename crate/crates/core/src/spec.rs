//! Text descriptions of groups, e.g. `prod(alt(5), cyclic(2))` or `wreathY(2,3,1)`.

use std::fmt;
use std::str::FromStr;

use crate::constructors as c;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Nesting limit for `prod(...)`, so hostile input cannot exhaust the stack.
const MAX_DEPTH: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    Sym(u64),
    Alt(u64),
    Dihedral(u64),
    Sl2(u64),
    Frob(u64, u64),
    FrobCyc(u64, u64, u64),
    WreathY(u64, u64, u64),
    Xt(u64, u64, u64),
    Baer(u64, u64, u64, u64),
    Prod(Vec<GroupSpec>),
}

/// A constructed group with its distinguished element, where the construction has one.
#[derive(Debug)]
pub struct Built {
    pub group: FiniteGroup,
    pub distinguished: Option<usize>,
}

fn small(v: u64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidParams(format!("{what} = {v} is too large")))
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Built> {
        let plain = |group| Ok(Built { group, distinguished: None });
        match *self {
            GroupSpec::Cyclic(n) => plain(c::cyclic(n, cap)?),
            GroupSpec::Sym(m) => plain(c::sym(m, cap)?),
            GroupSpec::Alt(m) => plain(c::alt(m, cap)?),
            GroupSpec::Dihedral(n) => plain(c::dihedral(n, cap)?),
            GroupSpec::Sl2(q) => {
                let s = c::sl2(q, cap)?;
                Ok(Built { distinguished: Some(s.diagonal), group: s.group })
            }
            GroupSpec::Frob(p, q) => {
                let f = c::frobenius(p, q, cap)?;
                Ok(Built { distinguished: Some(f.complement_generator), group: f.group })
            }
            GroupSpec::FrobCyc(p, m, q) => plain(c::frob_cyclic(p, small(m, "m")?, q, cap)?),
            GroupSpec::WreathY(p, q, t) => {
                let y = c::wreath_y(p, q, small(t, "t")?, cap)?;
                Ok(Built { distinguished: Some(y.g), group: y.group })
            }
            GroupSpec::Xt(p, q, t) => {
                let x = c::group_x(p, q, small(t, "t")?, cap)?;
                Ok(Built { distinguished: Some(x.g_w), group: x.group })
            }
            GroupSpec::Baer(p, t, q, n) => {
                let b = c::baer_group(p, small(t, "t")?, q, small(n, "n")?, cap)?;
                Ok(Built { distinguished: Some(b.x), group: b.group })
            }
            GroupSpec::Prod(ref parts) => {
                let factors = parts.iter().map(|s| s.build(cap).map(|b| b.group)).collect::<Result<Vec<_>>>()?;
                plain(c::direct_product(factors, cap)?.group)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Sym(m) => write!(f, "sym({m})"),
            GroupSpec::Alt(m) => write!(f, "alt({m})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Sl2(q) => write!(f, "sl2({q})"),
            GroupSpec::Frob(p, q) => write!(f, "frob({p},{q})"),
            GroupSpec::FrobCyc(p, m, q) => write!(f, "frobcyc({p},{m},{q})"),
            GroupSpec::WreathY(p, q, t) => write!(f, "wreathY({p},{q},{t})"),
            GroupSpec::Xt(p, q, t) => write!(f, "xt({p},{q},{t})"),
            GroupSpec::Baer(p, t, q, n) => write!(f, "baer({p},{t},{q},{n})"),
            GroupSpec::Prod(parts) => {
                write!(f, "prod(")?;
                for (i, s) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Whitespace-skipping cursor shared by the small text formats in this crate.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub(crate) fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{ch}`")))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = if rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
            rest.bytes().take_while(|b| b.is_ascii_alphanumeric()).count()
        } else {
            0
        };
        if len == 0 {
            return Err(Error::parse(self.pos, "expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub(crate) fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let v = rest[..len].parse::<u64>().map_err(|_| Error::parse(self.pos, "integer out of range"))?;
        self.pos += len;
        Ok(v)
    }
}

fn parse_spec(cur: &mut Cursor<'_>, depth: usize) -> Result<GroupSpec> {
    if depth > MAX_DEPTH {
        return Err(Error::parse(cur.pos(), "nesting too deep"));
    }
    let start = cur.pos();
    let name = cur.ident()?;
    cur.expect('(')?;
    if name == "prod" {
        let mut parts = Vec::new();
        if !cur.eat(')') {
            loop {
                parts.push(parse_spec(cur, depth + 1)?);
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        return Ok(GroupSpec::Prod(parts));
    }
    let mut args = Vec::new();
    if !cur.eat(')') {
        loop {
            args.push(cur.uint()?);
            if cur.eat(')') {
                break;
            }
            cur.expect(',')?;
        }
    }
    let want = match name {
        "cyclic" | "sym" | "alt" | "dihedral" | "sl2" => 1,
        "frob" => 2,
        "frobcyc" | "wreathY" | "xt" => 3,
        "baer" => 4,
        _ => return Err(Error::parse(start, format!("unknown constructor `{name}`"))),
    };
    if args.len() != want {
        return Err(Error::parse(start, format!("{name} takes {want} arguments, got {}", args.len())));
    }
    let a = &args;
    Ok(match name {
        "cyclic" => GroupSpec::Cyclic(a[0]),
        "sym" => GroupSpec::Sym(a[0]),
        "alt" => GroupSpec::Alt(a[0]),
        "dihedral" => GroupSpec::Dihedral(a[0]),
        "sl2" => GroupSpec::Sl2(a[0]),
        "frob" => GroupSpec::Frob(a[0], a[1]),
        "frobcyc" => GroupSpec::FrobCyc(a[0], a[1], a[2]),
        "wreathY" => GroupSpec::WreathY(a[0], a[1], a[2]),
        "xt" => GroupSpec::Xt(a[0], a[1], a[2]),
        _ => GroupSpec::Baer(a[0], a[1], a[2], a[3]),
    })
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let spec = parse_spec(&mut cur, 0)?;
        if !cur.at_end() {
            return Err(Error::parse(cur.pos(), "trailing input"));
        }
        Ok(spec)
    }
}
