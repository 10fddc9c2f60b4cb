//! Text forms: nested `m2(m2(1,2),3)` for monomials and partial-composition
//! expressions such as `T1∘1(m2∘1 T1) + l*T1∘1 m2`.

use crate::scalar::Scalar;
use crate::trees::{Input, PlanarTree};

use super::{coefficient_prefix, compose, Accumulator, GenKind, Generator, OperadElement, TreeMonomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?}: {reason}")]
pub struct NotationError {
    pub input: String,
    pub reason: String,
}

fn fail(input: &str, reason: impl Into<String>) -> NotationError {
    NotationError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// `m3`, `T1`, `m_3`, `x2`, `y1`.
pub fn parse_generator(text: &str) -> Result<Generator, NotationError> {
    let t = text.trim();
    let mut chars = t.chars();
    let kind = match chars.next() {
        Some('m') => GenKind::M,
        Some('T') => GenKind::T,
        Some('x') => GenKind::X,
        Some('y') => GenKind::Y,
        _ => return Err(fail(text, "expected one of m, T, x, y")),
    };
    let digits = chars.as_str().trim_start_matches('_');
    let n: usize = digits.parse().map_err(|_| fail(text, "bad arity"))?;
    let ok = match kind {
        GenKind::M | GenKind::X => n >= 2,
        GenKind::T | GenKind::Y => n >= 1,
    };
    if !ok {
        return Err(fail(text, "arity below the minimum for this generator"));
    }
    Ok(Generator { kind, arity: n })
}

/// Parses the nested form produced by `Display for TreeMonomial`.
pub fn parse_monomial(text: &str) -> Result<TreeMonomial, NotationError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut tokens = Vec::new();
    let mut decorations = Vec::new();
    let mut next_leaf = 1;
    fn node(
        text: &str,
        chars: &[char],
        pos: &mut usize,
        tokens: &mut Vec<u16>,
        decs: &mut Vec<Generator>,
        next_leaf: &mut usize,
    ) -> Result<(), NotationError> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_alphanumeric() || chars.get(*pos) == Some(&'_') {
            *pos += 1;
        }
        let word: String = chars[start..*pos].iter().collect();
        if word.is_empty() {
            return Err(fail(text, format!("unexpected character at {start}")));
        }
        if word.chars().all(|c| c.is_ascii_digit()) {
            let n: usize = word.parse().unwrap();
            if n != *next_leaf {
                return Err(fail(text, "leaves must be numbered 1, 2, ... from the left"));
            }
            *next_leaf += 1;
            tokens.push(0);
            return Ok(());
        }
        let g = parse_generator(&word)?;
        decs.push(g);
        tokens.push(g.arity as u16);
        if chars.get(*pos) != Some(&'(') {
            return Err(fail(text, "expected '('"));
        }
        *pos += 1;
        for k in 0..g.arity {
            node(text, chars, pos, tokens, decs, next_leaf)?;
            let want = if k + 1 == g.arity { ')' } else { ',' };
            if chars.get(*pos) != Some(&want) {
                return Err(fail(text, format!("expected {want:?} (arity of {g})")));
            }
            *pos += 1;
        }
        Ok(())
    }
    node(text, &chars, &mut pos, &mut tokens, &mut decorations, &mut next_leaf)?;
    if pos != chars.len() || tokens[0] == 0 {
        return Err(fail(text, "trailing input"));
    }
    TreeMonomial::new(PlanarTree::from_tokens(tokens), decorations).map_err(|e| fail(text, e.to_string()))
}

/// The monomial as left-nested partial compositions; evaluates back to `+m`.
pub fn render_composition(m: &TreeMonomial) -> String {
    let infos = m.tree().vertices();
    fn leaves(infos: &[crate::trees::VertexInfo], v: usize) -> usize {
        infos[v]
            .inputs
            .iter()
            .map(|i| match *i {
                Input::Leaf(_) => 1,
                Input::Vertex(c) => leaves(infos, c),
            })
            .sum()
    }
    fn go(m: &TreeMonomial, infos: &[crate::trees::VertexInfo], v: usize) -> (String, bool) {
        let mut s = m.decorations()[v].name();
        let mut composite = false;
        let mut shift = 0;
        for (slot, input) in infos[v].inputs.iter().enumerate() {
            if let Input::Vertex(c) = *input {
                let (cs, c_comp) = go(m, infos, c);
                let left = if composite { format!("({s})") } else { s };
                let right = if c_comp { format!("({cs})") } else { format!(" {cs}") };
                s = format!("{left}∘{}{right}", slot + 1 + shift);
                composite = true;
                shift += leaves(infos, c) - 1;
            }
        }
        (s, composite)
    }
    go(m, &infos, 0).0
}

/// Renders an element as a signed sum of composition expressions.
pub fn render_element(e: &OperadElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.terms().iter().enumerate() {
        out.push_str(&coefficient_prefix(c, idx == 0));
        out.push_str(&render_composition(m));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Gen(Generator),
    Int(usize),
    Circ,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    /// Raw scalar text such as `l`, `l^2`, `3/4`.
    Scalar(String),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, NotationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '∘' => {
                i += 1;
                if chars.get(i) == Some(&'_') {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| fail(text, "expected slot index after ∘"))?;
                out.push(Tok::Circ);
                out.push(Tok::Int(n));
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1;
            }
            'm' | 'T' | 'x' | 'y' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Tok::Gen(parse_generator(&word)?));
            }
            'l' | 'λ' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || matches!(chars[i], '/' | '^' | 'l' | 'λ')) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect::<String>().replace('λ', "l");
                out.push(Tok::Scalar(word));
            }
            _ => return Err(fail(text, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// Parses sums like `T1∘1(m2∘1 T1) + l*T1∘1 m2 − (m2∘1 T1)∘2 T1`.
/// Compositions associate to the left.
pub fn parse_composition_expr(text: &str) -> Result<OperadElement, NotationError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(fail(text, "trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, reason: &str) -> NotationError {
        fail(self.text, format!("{reason} at token {}", self.pos))
    }

    fn sum(&mut self) -> Result<OperadElement, NotationError> {
        let mut acc = Accumulator::default();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (c, m) = self.term()?;
            let c = if negative { -c } else { c };
            acc.add_element(&m, &c);
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc.finish())
    }

    /// A product of scalar factors and at most one composition.
    fn term(&mut self) -> Result<(Scalar, OperadElement), NotationError> {
        let mut coef = Scalar::one();
        let mut comp: Option<OperadElement> = None;
        loop {
            match self.peek() {
                Some(Tok::Scalar(s)) => {
                    let s = s.clone();
                    self.pos += 1;
                    if s == "0" && comp.is_none() && !matches!(self.peek(), Some(Tok::Star)) {
                        coef = Scalar::zero();
                        comp = Some(OperadElement::zero());
                    } else {
                        let v: Scalar = s.parse().map_err(|_| self.err("bad scalar"))?;
                        coef = &coef * &v;
                    }
                }
                Some(Tok::LParen) if !matches!(self.toks.get(self.pos + 1), Some(Tok::Gen(_)) | Some(Tok::LParen)) => {
                    // parenthesized scalar
                    self.pos += 1;
                    let start = self.pos;
                    while !matches!(self.peek(), Some(Tok::RParen) | None) {
                        self.pos += 1;
                    }
                    let inner: String = self.toks[start..self.pos]
                        .iter()
                        .map(|t| match t {
                            Tok::Scalar(s) => s.clone(),
                            Tok::Plus => "+".into(),
                            Tok::Minus => "-".into(),
                            Tok::Star => "*".into(),
                            _ => "?".into(),
                        })
                        .collect();
                    self.pos += 1;
                    let v: Scalar = inner.parse().map_err(|_| self.err("bad scalar"))?;
                    coef = &coef * &v;
                }
                Some(Tok::Gen(_)) | Some(Tok::LParen) if comp.is_none() => {
                    comp = Some(self.composition()?);
                }
                _ => return Err(self.err("expected a term")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                continue;
            }
            if comp.is_none() && matches!(self.peek(), Some(Tok::Gen(_)) | Some(Tok::LParen)) {
                continue;
            }
            break;
        }
        let comp = comp.ok_or_else(|| self.err("missing composition"))?;
        Ok((coef, comp))
    }

    fn composition(&mut self) -> Result<OperadElement, NotationError> {
        let mut left = self.atom()?;
        while self.peek() == Some(&Tok::Circ) {
            self.pos += 1;
            let i = match self.peek() {
                Some(Tok::Int(i)) => *i,
                _ => return Err(self.err("expected slot")),
            };
            self.pos += 1;
            let right = self.atom()?;
            left = compose(&left, i, &right).map_err(|e| self.err(&e.to_string()))?;
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<OperadElement, NotationError> {
        match self.peek().cloned() {
            Some(Tok::Gen(g)) => {
                self.pos += 1;
                Ok(OperadElement::generator(g))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.composition()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected a generator or '('")),
        }
    }
}
