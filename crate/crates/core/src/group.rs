//! Group families with exact normal forms, generating sets, word metrics and
//! finite balls of Cayley graphs.
//!
//! Every element is kept in the canonical form of its family, so equality of
//! elements is structural equality. Infinite groups are only ever looked at
//! through a [`Ball`] around the identity.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// Number of ends of a group, either finite (0, 1 or 2) or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ends {
    Finite(u8),
    Infinite,
}

impl fmt::Display for Ends {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ends::Finite(n) => write!(f, "{n}"),
            Ends::Infinite => write!(f, "inf"),
        }
    }
}

impl Ends {
    fn to_json(self) -> Value {
        match self {
            Ends::Finite(n) => json!(n),
            Ends::Infinite => json!("inf"),
        }
    }

    fn from_json(v: &Value) -> Result<Ends> {
        match v {
            Value::Number(n) => match n.as_u64() {
                Some(k @ 0..=2) => Ok(Ends::Finite(k as u8)),
                _ => Err(Error::Parse(format!("ends must be 0, 1, 2 or \"inf\", got {n}"))),
            },
            Value::String(s) if s == "inf" || s == "infinity" => Ok(Ends::Infinite),
            other => Err(Error::Parse(format!("bad ends value {other}"))),
        }
    }
}

/// The group families the crate knows how to multiply in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    FreeAbelian(usize),
    Free(usize),
    FiniteCyclic(u32),
    FiniteSymmetric(usize),
    FreeProductZZ3,
    DirectProduct(Vec<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: Family,
    pub declared_ends: Ends,
    pub declared_amenable: bool,
    /// Optional custom generators as token strings over the standard letters.
    pub generators: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn new(family: Family) -> Result<GroupSpec> {
        validate_family(&family)?;
        let (declared_ends, declared_amenable) = default_invariants(&family);
        Ok(GroupSpec { family, declared_ends, declared_amenable, generators: None })
    }

    pub fn free_abelian(d: usize) -> GroupSpec {
        GroupSpec::new(Family::FreeAbelian(d)).expect("d >= 1")
    }

    pub fn free(m: usize) -> GroupSpec {
        GroupSpec::new(Family::Free(m)).expect("m >= 1")
    }

    pub fn cyclic(q: u32) -> GroupSpec {
        GroupSpec::new(Family::FiniteCyclic(q)).expect("q >= 2")
    }

    pub fn symmetric(q: usize) -> GroupSpec {
        GroupSpec::new(Family::FiniteSymmetric(q)).expect("2 <= q <= 8")
    }

    pub fn zz3() -> GroupSpec {
        GroupSpec::new(Family::FreeProductZZ3).expect("always valid")
    }

    pub fn product(factors: Vec<GroupSpec>) -> Result<GroupSpec> {
        GroupSpec::new(Family::DirectProduct(factors))
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        match &self.family {
            Family::FreeAbelian(_) | Family::Free(_) | Family::FreeProductZZ3 => None,
            Family::FiniteCyclic(q) => Some(*q as u128),
            Family::FiniteSymmetric(q) => Some((1..=*q as u128).product()),
            Family::DirectProduct(fs) => {
                fs.iter().try_fold(1u128, |acc, f| f.order().map(|o| acc * o))
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<GroupSpec> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        GroupSpec::from_json(&v)
    }

    /// Reads `{family, params, generators, declared_ends?, declared_amenable?}`.
    pub fn from_json(v: &Value) -> Result<GroupSpec> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("group spec must be an object".into()))?;
        let fam = obj
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"family\"".into()))?;
        let empty = Value::Object(Default::default());
        let params = obj.get("params").unwrap_or(&empty);
        let param = |name: &str| -> Result<u64> {
            params
                .get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("family {fam} needs integer param \"{name}\"")))
        };
        let family = match fam {
            "free_abelian" | "Z^d" => Family::FreeAbelian(param("d")? as usize),
            "free" | "F_m" => Family::Free(param("m")? as usize),
            "cyclic" | "Z_q" => Family::FiniteCyclic(param("q")? as u32),
            "symmetric" | "S_q" => Family::FiniteSymmetric(param("q")? as usize),
            "zz3" | "Z*Z3" => Family::FreeProductZZ3,
            "product" => {
                let fs = params
                    .get("factors")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("product needs params.factors".into()))?;
                let factors = fs.iter().map(GroupSpec::from_json).collect::<Result<Vec<_>>>()?;
                Family::DirectProduct(factors)
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        let mut spec = GroupSpec::new(family)?;
        if let Some(e) = obj.get("declared_ends") {
            let ends = Ends::from_json(e)?;
            if ends != spec.declared_ends {
                return Err(Error::Parse(format!(
                    "declared_ends {ends} conflicts with the family ({})",
                    spec.declared_ends
                )));
            }
        }
        if let Some(a) = obj.get("declared_amenable") {
            let a = a.as_bool().ok_or_else(|| Error::Parse("declared_amenable must be boolean".into()))?;
            if a != spec.declared_amenable {
                return Err(Error::Parse(format!(
                    "declared_amenable {a} conflicts with the family ({})",
                    spec.declared_amenable
                )));
            }
        }
        if let Some(g) = obj.get("generators") {
            let arr = g.as_array().ok_or_else(|| Error::Parse("generators must be an array".into()))?;
            let gens = arr
                .iter()
                .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| Error::Parse("generator must be a string".into())))
                .collect::<Result<Vec<_>>>()?;
            spec.generators = Some(gens);
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        let (family, params) = match &self.family {
            Family::FreeAbelian(d) => ("free_abelian", json!({ "d": d })),
            Family::Free(m) => ("free", json!({ "m": m })),
            Family::FiniteCyclic(q) => ("cyclic", json!({ "q": q })),
            Family::FiniteSymmetric(q) => ("symmetric", json!({ "q": q })),
            Family::FreeProductZZ3 => ("zz3", json!({})),
            Family::DirectProduct(fs) => {
                ("product", json!({ "factors": fs.iter().map(GroupSpec::to_json).collect::<Vec<_>>() }))
            }
        };
        let mut v = json!({
            "family": family,
            "params": params,
            "declared_ends": self.declared_ends.to_json(),
            "declared_amenable": self.declared_amenable,
        });
        if let Some(g) = &self.generators {
            v["generators"] = json!(g);
        }
        v
    }
}

fn validate_family(f: &Family) -> Result<()> {
    match f {
        Family::FreeAbelian(0) => Err(Error::Parse("free abelian rank must be >= 1".into())),
        Family::Free(0) => Err(Error::Parse("free rank must be >= 1".into())),
        Family::FiniteCyclic(q) if *q < 2 => Err(Error::Parse("cyclic order must be >= 2".into())),
        Family::FiniteSymmetric(q) if !(2..=8).contains(q) => {
            Err(Error::Parse("symmetric degree must lie in 2..=8".into()))
        }
        Family::DirectProduct(fs) if fs.is_empty() => Err(Error::Parse("product needs factors".into())),
        _ => Ok(()),
    }
}

fn default_invariants(f: &Family) -> (Ends, bool) {
    match f {
        Family::FreeAbelian(1) | Family::Free(1) => (Ends::Finite(2), true),
        Family::FreeAbelian(_) => (Ends::Finite(1), true),
        Family::Free(_) | Family::FreeProductZZ3 => (Ends::Infinite, false),
        Family::FiniteCyclic(_) | Family::FiniteSymmetric(_) => (Ends::Finite(0), true),
        Family::DirectProduct(fs) => {
            let amenable = fs.iter().all(|s| s.declared_amenable);
            let infinite: Vec<&GroupSpec> = fs.iter().filter(|s| !s.is_finite()).collect();
            let ends = match infinite.len() {
                0 => Ends::Finite(0),
                1 => infinite[0].declared_ends,
                _ => Ends::Finite(1),
            };
            (ends, amenable)
        }
    }
}

/// One syllable of the normal form in the free product of ℤ and ℤ₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Syllable {
    /// `t^a` with `a != 0`.
    T(i64),
    /// `u^b` with `b` in {1, 2}.
    U(u8),
}

/// A group element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vector(Vec<i64>),
    /// Freely reduced word; letter `k` is `k + 1`, its inverse `-(k + 1)`.
    Word(Vec<i32>),
    Syllables(Vec<Syllable>),
    Residue(u32),
    Perm(Vec<u8>),
    Tuple(Vec<Element>),
}

/// A generator token: a letter index and whether it is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub letter: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone)]
struct SymTable {
    words: HashMap<Vec<u8>, Vec<Token>>,
}

/// A group together with its letter assignment, ready for arithmetic.
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    letters: Vec<char>,
    /// Standard generators, one per letter, in letter order.
    std_gens: Vec<Element>,
    offset: usize,
    sym: Option<SymTable>,
    factors: Vec<Group>,
    ball_cap: usize,
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Group> {
        validate_family(&spec.family)?;
        let g = Group::build(spec, 0, true)?;
        if g.letters.len() > 26 {
            return Err(Error::Parse("more than 26 generator letters".into()));
        }
        Ok(g)
    }

    fn build(spec: &GroupSpec, offset: usize, standalone: bool) -> Result<Group> {
        let seq = |k: usize| -> Vec<char> { (0..k).map(|i| (b'a' + (offset + i) as u8) as char).collect() };
        let mut g = Group {
            spec: spec.clone(),
            letters: Vec::new(),
            std_gens: Vec::new(),
            offset,
            sym: None,
            factors: Vec::new(),
            ball_cap: DEFAULT_BALL_CAP,
        };
        match &spec.family {
            Family::FreeAbelian(d) => {
                g.letters = seq(*d);
                g.std_gens = (0..*d)
                    .map(|i| {
                        let mut v = vec![0; *d];
                        v[i] = 1;
                        Element::Vector(v)
                    })
                    .collect();
            }
            Family::Free(m) => {
                g.letters = seq(*m);
                g.std_gens = (0..*m).map(|i| Element::Word(vec![i as i32 + 1])).collect();
            }
            Family::FiniteCyclic(_) => {
                g.letters = seq(1);
                g.std_gens = vec![Element::Residue(1)];
            }
            Family::FiniteSymmetric(q) => {
                let q = *q;
                let mut swap: Vec<u8> = (0..q as u8).collect();
                swap.swap(0, 1);
                g.std_gens.push(Element::Perm(swap));
                if q >= 3 {
                    g.std_gens.push(Element::Perm((0..q).map(|i| ((i + 1) % q) as u8).collect()));
                }
                g.letters = seq(g.std_gens.len());
                g.sym = Some(g.symmetric_table());
            }
            Family::FreeProductZZ3 => {
                g.letters = if standalone { vec!['t', 'u'] } else { seq(2) };
                g.std_gens = vec![Element::Syllables(vec![Syllable::T(1)]), Element::Syllables(vec![Syllable::U(1)])];
            }
            Family::DirectProduct(fs) => {
                let mut off = offset;
                for f in fs {
                    let fg = Group::build(f, off, false)?;
                    off += fg.letters.len();
                    g.factors.push(fg);
                }
                for (i, fg) in g.factors.iter().enumerate() {
                    g.letters.extend(fg.letters.iter().copied());
                    for s in &fg.std_gens {
                        let mut comps: Vec<Element> = g.factors.iter().map(Group::identity).collect();
                        comps[i] = s.clone();
                        g.std_gens.push(Element::Tuple(comps));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Shortlex table of words for the permutations of a symmetric group.
    fn symmetric_table(&self) -> SymTable {
        let id = self.identity();
        let key = |e: &Element| match e {
            Element::Perm(p) => p.clone(),
            _ => unreachable!(),
        };
        let mut words = HashMap::new();
        words.insert(key(&id), Vec::new());
        let mut queue = VecDeque::from([id]);
        let tokens = self.local_tokens();
        while let Some(x) = queue.pop_front() {
            let w = words[&key(&x)].clone();
            for tok in &tokens {
                let y = self.multiply(&x, &self.token_element(*tok));
                if let std::collections::hash_map::Entry::Vacant(e) = words.entry(key(&y)) {
                    let mut w2 = w.clone();
                    w2.push(*tok);
                    e.insert(w2);
                    queue.push_back(y);
                }
            }
        }
        SymTable { words }
    }

    fn local_tokens(&self) -> Vec<Token> {
        (0..self.letters.len())
            .flat_map(|i| {
                let letter = self.offset + i;
                [Token { letter, inverse: false }, Token { letter, inverse: true }]
            })
            .collect()
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn set_ball_cap(&mut self, cap: usize) {
        self.ball_cap = cap.max(1);
    }

    pub fn standard_generators(&self) -> &[Element] {
        &self.std_gens
    }

    pub fn identity(&self) -> Element {
        match &self.spec.family {
            Family::FreeAbelian(d) => Element::Vector(vec![0; *d]),
            Family::Free(_) => Element::Word(Vec::new()),
            Family::FreeProductZZ3 => Element::Syllables(Vec::new()),
            Family::FiniteCyclic(_) => Element::Residue(0),
            Family::FiniteSymmetric(q) => Element::Perm((0..*q as u8).collect()),
            Family::DirectProduct(_) => Element::Tuple(self.factors.iter().map(Group::identity).collect()),
        }
    }

    pub fn is_identity(&self, e: &Element) -> bool {
        *e == self.identity()
    }

    /// Checks that `e` is a canonical element of this group.
    pub fn validate(&self, e: &Element) -> Result<()> {
        let bad = || Err(Error::Parse(format!("{e:?} is not a canonical element of this group")));
        match (&self.spec.family, e) {
            (Family::FreeAbelian(d), Element::Vector(v)) if v.len() == *d => Ok(()),
            (Family::Free(m), Element::Word(w)) => {
                let ok = w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *m)
                    && w.windows(2).all(|p| p[0] != -p[1]);
                if ok { Ok(()) } else { bad() }
            }
            (Family::FreeProductZZ3, Element::Syllables(s)) => {
                let ok = s.iter().all(|x| match x {
                    Syllable::T(a) => *a != 0,
                    Syllable::U(b) => *b == 1 || *b == 2,
                }) && s.windows(2).all(|p| std::mem::discriminant(&p[0]) != std::mem::discriminant(&p[1]));
                if ok { Ok(()) } else { bad() }
            }
            (Family::FiniteCyclic(q), Element::Residue(r)) if r < q => Ok(()),
            (Family::FiniteSymmetric(q), Element::Perm(p)) if p.len() == *q => {
                let mut seen = vec![false; *q];
                for &x in p {
                    if (x as usize) >= *q || seen[x as usize] {
                        return bad();
                    }
                    seen[x as usize] = true;
                }
                Ok(())
            }
            (Family::DirectProduct(_), Element::Tuple(cs)) if cs.len() == self.factors.len() => {
                self.factors.iter().zip(cs).try_for_each(|(f, c)| f.validate(c))
            }
            _ => bad(),
        }
    }

    /// The group law on canonical forms.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Element::Word(x), Element::Word(y)) => {
                let mut out = x.clone();
                for &l in y {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Element::Word(out)
            }
            (Element::Syllables(x), Element::Syllables(y)) => {
                let mut out = x.clone();
                for &s in y {
                    push_syllable(&mut out, s);
                }
                Element::Syllables(out)
            }
            (Element::Residue(x), Element::Residue(y)) => {
                let q = match self.spec.family {
                    Family::FiniteCyclic(q) => q,
                    _ => unreachable!("residue outside a cyclic group"),
                };
                Element::Residue(((*x as u64 + *y as u64) % q as u64) as u32)
            }
            (Element::Perm(x), Element::Perm(y)) => Element::Perm(y.iter().map(|&i| x[i as usize]).collect()),
            (Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
                self.factors.iter().zip(x.iter().zip(y)).map(|(f, (p, q))| f.multiply(p, q)).collect(),
            ),
            _ => panic!("mismatched element kinds {a:?} and {b:?}"),
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match a {
            Element::Vector(x) => Element::Vector(x.iter().map(|v| -v).collect()),
            Element::Word(w) => Element::Word(w.iter().rev().map(|l| -l).collect()),
            Element::Syllables(s) => Element::Syllables(
                s.iter()
                    .rev()
                    .map(|x| match x {
                        Syllable::T(a) => Syllable::T(-a),
                        Syllable::U(b) => Syllable::U(3 - b),
                    })
                    .collect(),
            ),
            Element::Residue(r) => {
                let q = match self.spec.family {
                    Family::FiniteCyclic(q) => q,
                    _ => unreachable!(),
                };
                Element::Residue((q - r) % q)
            }
            Element::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                Element::Perm(inv)
            }
            Element::Tuple(cs) => Element::Tuple(self.factors.iter().zip(cs).map(|(f, c)| f.inverse(c)).collect()),
        }
    }

    fn token_element(&self, t: Token) -> Element {
        let g = &self.std_gens[t.letter - self.offset];
        if t.inverse { self.inverse(g) } else { g.clone() }
    }

    /// The canonical word of `e` as a token sequence.
    pub fn word(&self, e: &Element) -> Vec<Token> {
        let tok = |i: usize, inverse: bool| Token { letter: self.offset + i, inverse };
        match e {
            Element::Vector(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| std::iter::repeat_n(tok(i, x < 0), x.unsigned_abs() as usize))
                .collect(),
            Element::Word(w) => w.iter().map(|&l| tok(l.unsigned_abs() as usize - 1, l < 0)).collect(),
            Element::Syllables(s) => s
                .iter()
                .flat_map(|x| match *x {
                    Syllable::T(a) => vec![tok(0, a < 0); a.unsigned_abs() as usize],
                    Syllable::U(1) => vec![tok(1, false)],
                    Syllable::U(_) => vec![tok(1, true)],
                })
                .collect(),
            Element::Residue(r) => {
                let q = match self.spec.family {
                    Family::FiniteCyclic(q) => q,
                    _ => unreachable!(),
                };
                if *r <= q / 2 {
                    vec![tok(0, false); *r as usize]
                } else {
                    vec![tok(0, true); (q - r) as usize]
                }
            }
            Element::Perm(p) => self.sym.as_ref().expect("symmetric table").words[p].clone(),
            Element::Tuple(cs) => self.factors.iter().zip(cs).flat_map(|(f, c)| f.word(c)).collect(),
        }
    }

    fn token_char(&self, t: Token) -> char {
        let c = self.letters[t.letter - self.offset];
        if t.inverse { c.to_ascii_uppercase() } else { c }
    }

    /// Token string of `e`: letters separated by spaces, capitals for
    /// inverses, the empty string for the identity.
    pub fn render(&self, e: &Element) -> String {
        let w = self.word(e);
        let mut s = String::with_capacity(2 * w.len());
        for (i, t) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push(self.token_char(*t));
        }
        s
    }

    /// Parses a token string such as `"a B a"` or `"aBa"`; `""` and `"1"`
    /// denote the identity.
    pub fn parse(&self, s: &str) -> Result<Element> {
        let mut acc = self.identity();
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(acc);
        }
        for c in trimmed.chars().filter(|c| !c.is_whitespace()) {
            let lower = c.to_ascii_lowercase();
            let i = self
                .letters
                .iter()
                .position(|&l| l == lower)
                .ok_or_else(|| Error::Parse(format!("unknown generator token {c:?} in {s:?}")))?;
            let t = Token { letter: self.offset + i, inverse: c.is_ascii_uppercase() };
            acc = self.multiply(&acc, &self.token_element(t));
        }
        Ok(acc)
    }

    /// Closed-form word length with respect to the standard generators.
    pub fn standard_length(&self, e: &Element) -> usize {
        self.word(e).len()
    }

    /// The standard symmetric generating set, checked to generate.
    pub fn generating_set(&self) -> Result<GeneratingSet> {
        match &self.spec.generators {
            None => Ok(GeneratingSet::new(self, self.std_gens.clone())),
            Some(words) => {
                let gens = words.iter().map(|w| self.parse(w)).collect::<Result<Vec<_>>>()?;
                let s = GeneratingSet::new(self, gens);
                self.check_generates(&s)?;
                Ok(s)
            }
        }
    }

    /// Bounded check that `s` generates the group: full closure for finite
    /// groups, standard generators within radius 8 for infinite ones.
    pub fn check_generates(&self, s: &GeneratingSet) -> Result<()> {
        if s.symmetric().is_empty() {
            return Err(Error::Rejected("empty generating set".into()));
        }
        match self.spec.order() {
            Some(order) => {
                let ball = enumerate_ball(self, s, usize::MAX / 2)?;
                if ball.len() as u128 != order {
                    return Err(Error::Rejected(format!(
                        "generators reach {} of {} elements",
                        ball.len(),
                        order
                    )));
                }
            }
            None => {
                let ball = enumerate_ball(self, s, 8)?;
                for (i, g) in self.std_gens.iter().enumerate() {
                    if !ball.contains(g) {
                        return Err(Error::Rejected(format!(
                            "standard generator {} not reached within radius 8",
                            self.letters[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable) {
    match (out.last().copied(), s) {
        (Some(Syllable::T(a)), Syllable::T(b)) => {
            out.pop();
            if a + b != 0 {
                out.push(Syllable::T(a + b));
            }
        }
        (Some(Syllable::U(a)), Syllable::U(b)) => {
            out.pop();
            let c = (a + b) % 3;
            if c != 0 {
                out.push(Syllable::U(c));
            }
        }
        _ => out.push(s),
    }
}

/// A finite generating set and its symmetric closure `S ∪ S⁻¹` without the
/// identity. Order: each generator followed by its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    generators: Vec<Element>,
    symmetric: Vec<Element>,
}

impl GeneratingSet {
    pub fn new(group: &Group, generators: Vec<Element>) -> GeneratingSet {
        let mut symmetric: Vec<Element> = Vec::new();
        for g in &generators {
            for x in [g.clone(), group.inverse(g)] {
                if !group.is_identity(&x) && !symmetric.contains(&x) {
                    symmetric.push(x);
                }
            }
        }
        GeneratingSet { generators, symmetric }
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn symmetric(&self) -> &[Element] {
        &self.symmetric
    }
}

/// The ball of radius `radius` about the identity, in breadth-first order.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: Element,
    pub radius: usize,
    pub interior_radius: usize,
    elements: Vec<Element>,
    dist: Vec<usize>,
    index: HashMap<Element, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Word length of `e`, if `e` lies in the ball.
    pub fn distance_from_center(&self, e: &Element) -> Option<usize> {
        self.index_of(e).map(|i| self.dist[i])
    }

    pub fn distance_at(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.dist[i] <= self.interior_radius
    }

    /// Sets the interior to the ball of radius `radius - k`.
    pub fn with_margin(mut self, k: usize) -> Ball {
        self.interior_radius = self.radius.saturating_sub(k);
        self
    }
}

/// Breadth-first closure of the identity under `S ∪ S⁻¹`, up to `radius`.
pub fn enumerate_ball(group: &Group, s: &GeneratingSet, radius: usize) -> Result<Ball> {
    let cap = group.ball_cap();
    let id = group.identity();
    let mut elements = vec![id.clone()];
    let mut dist = vec![0usize];
    let mut index = HashMap::from([(id.clone(), 0usize)]);
    let mut level_start = 0;
    let mut prev_level_len = 1usize;
    let mut r = 0;
    while r < radius {
        let level_end = elements.len();
        if level_start == level_end {
            break;
        }
        let level_len = level_end - level_start;
        let ratio = (level_len as f64 / prev_level_len as f64).max(1.0);
        let mut projected = elements.len() as f64;
        let mut term = level_len as f64;
        for _ in r..radius.min(r + 64) {
            term *= ratio;
            projected += term;
            if projected > cap as f64 {
                break;
            }
        }
        if let Some(order) = group.spec().order() {
            projected = projected.min(order as f64);
        }
        if projected > cap as f64 && ratio > 1.0 {
            return Err(Error::SizeCap { estimate: projected.min(1e38) as u128, cap });
        }
        for i in level_start..level_end {
            for g in s.symmetric() {
                let y = group.multiply(&elements[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    dist.push(r + 1);
                    if elements.len() > cap {
                        return Err(Error::SizeCap { estimate: elements.len() as u128, cap });
                    }
                }
            }
        }
        prev_level_len = level_len;
        level_start = level_end;
        r += 1;
    }
    Ok(Ball { center: id, radius, interior_radius: radius, elements, dist, index })
}

/// `d_S(g, h)`, read off a ball that must contain `g⁻¹h`.
pub fn word_distance(group: &Group, ball: &Ball, g: &Element, h: &Element) -> Result<usize> {
    let x = group.multiply(&group.inverse(g), h);
    ball.distance_from_center(&x).ok_or(Error::RadiusExhausted { radius: ball.radius })
}

/// `S ∪ S² ∪ … ∪ Sⁿ` with the identity removed.
pub fn power_generating_set(group: &Group, s: &GeneratingSet, n: usize) -> Result<GeneratingSet> {
    if n == 0 {
        return Err(Error::Precondition("power must be >= 1".into()));
    }
    if n == 1 {
        return Ok(s.clone());
    }
    let ball = enumerate_ball(group, s, n)?;
    let gens: Vec<Element> = ball.elements().iter().skip(1).cloned().collect();
    Ok(GeneratingSet::new(group, gens))
}

/// Serializable record of an element, used in JSON artifacts.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementRecord {
    pub word: String,
    pub length: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(spec: &GroupSpec) -> (Group, GeneratingSet) {
        let g = Group::new(spec).unwrap();
        let s = g.generating_set().unwrap();
        (g, s)
    }

    #[test]
    fn products_of_normal_forms() {
        let z2 = Group::new(&GroupSpec::free_abelian(2)).unwrap();
        let p = z2.multiply(&Element::Vector(vec![1, 0]), &Element::Vector(vec![0, 1]));
        assert_eq!(p, Element::Vector(vec![1, 1]));

        let f2 = Group::new(&GroupSpec::free(2)).unwrap();
        let a = f2.parse("a").unwrap();
        assert!(f2.is_identity(&f2.multiply(&a, &f2.parse("A").unwrap())));

        let zz3 = Group::new(&GroupSpec::zz3()).unwrap();
        let u = zz3.parse("u").unwrap();
        let u2 = zz3.parse("u u").unwrap();
        assert_eq!(zz3.render(&u2), "U");
        assert!(zz3.is_identity(&zz3.multiply(&u, &u2)));
    }

    #[test]
    fn syllables_merge_across_cancellation() {
        let g = Group::new(&GroupSpec::zz3()).unwrap();
        let x = g.parse("t u t").unwrap();
        let y = g.parse("T U T").unwrap();
        assert!(g.is_identity(&g.multiply(&x, &y)));
        let z = g.parse("t u T t U").unwrap();
        assert_eq!(g.render(&z), "t");
    }

    #[test]
    fn distances_match_closed_forms() {
        let (g, s) = std(&GroupSpec::free_abelian(2));
        let ball = enumerate_ball(&g, &s, 6).unwrap();
        let o = g.identity();
        assert_eq!(word_distance(&g, &ball, &o, &Element::Vector(vec![2, 3])).unwrap(), 5);
        let (f, fs) = std(&GroupSpec::free(2));
        let fb = enumerate_ball(&f, &fs, 4).unwrap();
        let aba = f.parse("a b a").unwrap();
        assert_eq!(word_distance(&f, &fb, &f.identity(), &aba).unwrap(), 3);
        assert_eq!(word_distance(&f, &fb, &aba, &aba).unwrap(), 0);
        let far = f.parse("aaaaa").unwrap();
        assert_eq!(
            word_distance(&f, &fb, &f.identity(), &far),
            Err(Error::RadiusExhausted { radius: 4 })
        );
    }

    #[test]
    fn ball_sizes() {
        let (g, s) = std(&GroupSpec::free_abelian(2));
        assert_eq!(enumerate_ball(&g, &s, 1).unwrap().len(), 5);
        let (f, fs) = std(&GroupSpec::free(2));
        assert_eq!(enumerate_ball(&f, &fs, 2).unwrap().len(), 17);
        let (z, zs) = std(&GroupSpec::zz3());
        let b = enumerate_ball(&z, &zs, 1).unwrap();
        let mut words: Vec<String> = b.elements().iter().map(|e| z.render(e)).collect();
        words.sort();
        assert_eq!(words, vec!["", "T", "U", "t", "u"]);
    }

    #[test]
    fn power_sets() {
        let (g, s) = std(&GroupSpec::free_abelian(1));
        let p3 = power_generating_set(&g, &s, 3).unwrap();
        let mut xs: Vec<i64> = p3
            .symmetric()
            .iter()
            .map(|e| match e {
                Element::Vector(v) => v[0],
                _ => unreachable!(),
            })
            .collect();
        xs.sort();
        assert_eq!(xs, vec![-3, -2, -1, 1, 2, 3]);
        assert_eq!(power_generating_set(&g, &s, 1).unwrap(), s);
    }

    #[test]
    fn size_cap_aborts_with_estimate() {
        let (mut f, fs) = std(&GroupSpec::free(3));
        f.set_ball_cap(1000);
        match enumerate_ball(&f, &fs, 10) {
            Err(Error::SizeCap { estimate, cap }) => {
                assert_eq!(cap, 1000);
                assert!(estimate > 1000);
            }
            other => panic!("expected size cap, got {other:?}"),
        }
    }

    #[test]
    fn finite_groups_close_up() {
        let (g, s) = std(&GroupSpec::symmetric(4));
        assert_eq!(enumerate_ball(&g, &s, 100).unwrap().len(), 24);
        let (c, cs) = std(&GroupSpec::cyclic(7));
        let b = enumerate_ball(&c, &cs, 100).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(c.render(&Element::Residue(5)), "A A");
    }

    #[test]
    fn symmetric_words_round_trip() {
        let (g, s) = std(&GroupSpec::symmetric(4));
        for e in enumerate_ball(&g, &s, 100).unwrap().elements() {
            assert_eq!(&g.parse(&g.render(e)).unwrap(), e);
        }
    }

    #[test]
    fn json_round_trip_and_conflicts() {
        let spec = GroupSpec::product(vec![GroupSpec::free_abelian(1), GroupSpec::cyclic(3)]).unwrap();
        assert_eq!(spec.declared_ends, Ends::Finite(2));
        let back = GroupSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let bad = r#"{"family":"free","params":{"m":2},"declared_ends":1}"#;
        assert!(GroupSpec::from_json_str(bad).is_err());
        let amen = r#"{"family":"zz3","declared_amenable":true}"#;
        assert!(GroupSpec::from_json_str(amen).is_err());
    }

    #[test]
    fn custom_generators_are_checked() {
        let ok = GroupSpec::from_json_str(r#"{"family":"free_abelian","params":{"d":1},"generators":["aa","aaa"]}"#)
            .unwrap();
        let g = Group::new(&ok).unwrap();
        assert_eq!(g.generating_set().unwrap().symmetric().len(), 4);
        let bad = GroupSpec::from_json_str(r#"{"family":"free_abelian","params":{"d":1},"generators":["aa"]}"#)
            .unwrap();
        assert!(Group::new(&bad).unwrap().generating_set().is_err());
        let zbad = GroupSpec::from_json_str(r#"{"family":"cyclic","params":{"q":6},"generators":["aa"]}"#).unwrap();
        assert!(Group::new(&zbad).unwrap().generating_set().is_err());
    }

    #[test]
    fn malformed_tokens_are_rejected() {
        let g = Group::new(&GroupSpec::free(2)).unwrap();
        assert!(g.parse("a x").is_err());
        assert!(g.validate(&Element::Word(vec![1, -1])).is_err());
        assert!(g.validate(&Element::Word(vec![3])).is_err());
        assert!(g.validate(&Element::Vector(vec![1])).is_err());
    }

    #[test]
    fn product_letters_are_sequential() {
        let spec = GroupSpec::product(vec![GroupSpec::zz3(), GroupSpec::free_abelian(1)]).unwrap();
        let g = Group::new(&spec).unwrap();
        assert_eq!(g.letters(), &['a', 'b', 'c']);
        let x = g.parse("a b b c").unwrap();
        assert_eq!(g.render(&x), "a B c");
    }
}
