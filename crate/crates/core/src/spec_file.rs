//! Line-oriented instance files. See the README for the grammar.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{group_algebra, Algebra, GradedAlgebra, Group};
use crate::comodule::{induced_comodule, Comodule};
use crate::constructions::{
    comatrix_coring, dual_coalgebra, dual_coalgebra_comodule, grading_coring, trivial_coring,
    GSet, GradedModule, GradingCoring,
};
use crate::coring::{Cointegral, Coring};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::modules::{Bimodule, RightModule};

#[derive(Clone, Debug)]
struct Line {
    number: usize,
    tokens: Vec<String>,
}

fn spec_error(line: usize, message: impl Into<String>) -> Error {
    Error::Spec {
        line,
        message: message.into(),
    }
}

/// Attaches a line number to library errors raised while building a block.
fn at<T>(line: usize, context: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Spec { .. } => e,
        other => spec_error(line, format!("{context}: {other}")),
    })
}

fn tokenize(text: &str) -> Vec<Line> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut current = String::new();
            for ch in content.chars() {
                if ch.is_whitespace() || matches!(ch, '[' | ']' | ';') {
                    if !current.is_empty() {
                        tokens.push(std::mem::take(&mut current));
                    }
                    if !ch.is_whitespace() {
                        tokens.push(ch.to_string());
                    }
                } else {
                    current.push(ch);
                }
            }
            if !current.is_empty() {
                tokens.push(current);
            }
            (!tokens.is_empty()).then_some(Line {
                number: i + 1,
                tokens,
            })
        })
        .collect()
}

pub fn parse_field(text: &str) -> Result<Field> {
    match text {
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = text
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| {
                    Error::Usage(format!("unknown field '{text}' (use q or fp:<p>)"))
                })?;
            Ok(Field::prime(p)?)
        }
    }
}

/// Where the supplement element `e` came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementChoice {
    Explicit(Vec<Scalar>),
    FixedPoint(String),
}

/// A comodule declared in the file, with its grading when it has one.
#[derive(Clone, Debug)]
pub struct DeclaredComodule {
    pub name: String,
    pub comodule: Comodule,
    pub graded: Option<GradedModule>,
}

/// A parsed and fully built instance.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub field: Field,
    pub coring_name: String,
    pub coring: Arc<Coring>,
    /// Labels of the coring basis.
    pub basis_labels: Vec<String>,
    pub grading: Option<GradingCoring>,
    pub comodules: Vec<DeclaredComodule>,
    pub cointegral: Option<Cointegral>,
    pub element: Option<ElementChoice>,
}

impl InstanceSpec {
    pub fn comodule(&self, name: &str) -> Option<&DeclaredComodule> {
        self.comodules.iter().find(|c| c.name == name)
    }

    /// Modules added to the oracle family: `A(x)` for every point of a
    /// grading, then the declared comodules' underlying modules.
    pub fn fixture_modules(&self) -> Result<Vec<(String, RightModule)>> {
        let mut out = Vec::new();
        if let Some(gc) = &self.grading {
            for x in 0..gc.xs.len() {
                out.push((
                    format!("A({})", gc.xs.labels()[x]),
                    gc.shifted_free(x)?.module,
                ));
            }
        }
        for c in &self.comodules {
            out.push((c.name.clone(), c.comodule.module().clone()));
        }
        Ok(out)
    }
}

struct Parser {
    field: Field,
    lines: Vec<Line>,
    pos: usize,
    groups: BTreeMap<String, Arc<Group>>,
    algebras: BTreeMap<String, AlgebraEntry>,
    gsets: BTreeMap<String, GSet>,
    coring: Option<CoringEntry>,
    comodules: Vec<DeclaredComodule>,
    cointegral: Option<(usize, CointegralDecl)>,
    element: Option<(usize, Vec<String>)>,
}

#[derive(Clone)]
struct AlgebraEntry {
    algebra: Arc<Algebra>,
    /// Set for `algebra <name> group <G>`.
    group: Option<Arc<Group>>,
}

#[derive(Clone)]
struct CoringEntry {
    name: String,
    coring: Arc<Coring>,
    labels: Vec<String>,
    grading: Option<GradingCoring>,
    comatrix_module: Option<Comodule>,
    dual_of: Option<Arc<Algebra>>,
}

enum CointegralDecl {
    Kronecker,
    Pairs(Vec<Line>),
}

/// Parses `text`; `field_override` replaces the file's `field` line.
pub fn parse_spec(text: &str, field_override: Option<Field>) -> Result<InstanceSpec> {
    let lines = tokenize(text);
    if lines.is_empty() {
        return Err(Error::NoInstance);
    }
    let mut field = Field::Rational;
    for line in &lines {
        if line.tokens[0] == "field" {
            if line.tokens.len() != 2 {
                return Err(spec_error(line.number, "expected 'field q' or 'field fp:<p>'"));
            }
            field = at(line.number, "field", parse_field(&line.tokens[1]))?;
        }
    }
    let mut parser = Parser {
        field: field_override.unwrap_or(field),
        lines,
        pos: 0,
        groups: BTreeMap::new(),
        algebras: BTreeMap::new(),
        gsets: BTreeMap::new(),
        coring: None,
        comodules: Vec::new(),
        cointegral: None,
        element: None,
    };
    parser.run()?;
    parser.finish()
}

impl Parser {
    fn next_line(&mut self) -> Option<Line> {
        let line = self.lines.get(self.pos).cloned();
        self.pos += 1;
        line
    }

    /// Body lines up to the matching `end`.
    fn block_body(&mut self, header: &Line) -> Result<Vec<Line>> {
        let mut body = Vec::new();
        loop {
            match self.next_line() {
                None => {
                    return Err(spec_error(
                        header.number,
                        format!("block '{}' is missing 'end'", header.tokens.join(" ")),
                    ))
                }
                Some(l) if l.tokens[0] == "end" => return Ok(body),
                Some(l) => body.push(l),
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        while let Some(line) = self.next_line() {
            let t = &line.tokens;
            match t[0].as_str() {
                "field" => {}
                "group" => self.group(&line)?,
                "algebra" => self.algebra(&line)?,
                "gset" => self.gset(&line)?,
                "coring" => self.coring(&line)?,
                "comodule" => self.comodule(&line)?,
                "cointegral" => self.cointegral(&line)?,
                "element" => {
                    if t.len() < 2 {
                        return Err(spec_error(line.number, "element needs a value"));
                    }
                    self.element = Some((line.number, t[1..].to_vec()));
                }
                other => {
                    return Err(spec_error(line.number, format!("unknown declaration '{other}'")))
                }
            }
        }
        Ok(())
    }

    fn name(line: &Line) -> Result<String> {
        line.tokens
            .get(1)
            .cloned()
            .ok_or_else(|| spec_error(line.number, format!("{} needs a name", line.tokens[0])))
    }

    fn lookup<'a, T>(
        map: &'a BTreeMap<String, T>,
        kind: &str,
        name: &str,
        line: usize,
    ) -> Result<&'a T> {
        map.get(name)
            .ok_or_else(|| spec_error(line, format!("undefined {kind} '{name}'")))
    }

    fn usize_arg(line: &Line, index: usize) -> Result<usize> {
        line.tokens
            .get(index)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| spec_error(line.number, "expected a nonnegative integer"))
    }

    fn group(&mut self, line: &Line) -> Result<()> {
        let name = Self::name(line)?;
        let group = match line.tokens.get(2).map(String::as_str) {
            Some("cyclic") => Group::cyclic(Self::usize_arg(line, 3)?.max(1)),
            Some(other) => {
                return Err(spec_error(line.number, format!("unknown group form '{other}'")))
            }
            None => {
                let body = self.block_body(line)?;
                let mut labels: Option<Vec<String>> = None;
                let mut rows: BTreeMap<String, (usize, Vec<String>)> = BTreeMap::new();
                for l in &body {
                    match l.tokens[0].as_str() {
                        "elements" => labels = Some(l.tokens[1..].to_vec()),
                        "row" if l.tokens.len() >= 2 => {
                            rows.insert(l.tokens[1].clone(), (l.number, l.tokens[2..].to_vec()));
                        }
                        _ => return Err(spec_error(l.number, "expected 'elements' or 'row'")),
                    }
                }
                let labels =
                    labels.ok_or_else(|| spec_error(line.number, "group block needs 'elements'"))?;
                let index = |s: &str, n: usize| {
                    labels
                        .iter()
                        .position(|l| l == s)
                        .ok_or_else(|| spec_error(n, format!("undefined group element '{s}'")))
                };
                let mut table = Vec::new();
                for a in &labels {
                    let (n, row) = rows
                        .get(a)
                        .ok_or_else(|| spec_error(line.number, format!("group: missing row {a}")))?;
                    if row.len() != labels.len() {
                        return Err(spec_error(
                            *n,
                            format!("group {name}: row has {} entries, expected {}", row.len(), labels.len()),
                        ));
                    }
                    table.push(row.iter().map(|s| index(s, *n)).collect::<Result<Vec<_>>>()?);
                }
                at(line.number, &format!("group {name}"), Group::new(labels.clone(), table))?
            }
        };
        self.groups.insert(name, Arc::new(group));
        Ok(())
    }

    fn algebra(&mut self, line: &Line) -> Result<()> {
        let name = Self::name(line)?;
        let field = self.field;
        let n = line.number;
        let mut group = None;
        let algebra = match line.tokens.get(2).map(String::as_str) {
            Some("ground") => Algebra::ground(field),
            Some("group") => {
                let g = line
                    .tokens
                    .get(3)
                    .ok_or_else(|| spec_error(n, "algebra group needs a group name"))?;
                let g = Self::lookup(&self.groups, "group", g, n)?.clone();
                let a = group_algebra(field, &g);
                group = Some(g);
                a
            }
            Some("matrix") => Algebra::matrix_algebra(field, Self::usize_arg(line, 3)?.max(1)),
            Some("truncated") => {
                Algebra::truncated_polynomial(field, Self::usize_arg(line, 3)?.max(1))
            }
            Some("diagonal") => Algebra::diagonal(field, Self::usize_arg(line, 3)?.max(1)),
            Some("upper-triangular") => Algebra::upper_triangular(field),
            Some(other) => return Err(spec_error(n, format!("unknown algebra form '{other}'"))),
            None => {
                let body = self.block_body(line)?;
                let labels = body
                    .iter()
                    .find(|l| l.tokens[0] == "basis")
                    .map(|l| l.tokens[1..].to_vec())
                    .ok_or_else(|| spec_error(n, format!("algebra {name}: missing 'basis'")))?;
                let d = labels.len();
                let mut products = vec![vec![field.zero(); d]; d * d];
                let mut unit = None;
                let index = |s: &str, ln: usize| {
                    labels
                        .iter()
                        .position(|l| l == s)
                        .ok_or_else(|| spec_error(ln, format!("undefined basis element '{s}'")))
                };
                for l in &body {
                    match l.tokens[0].as_str() {
                        "basis" => {}
                        "unit" => unit = Some(parse_vector(field, &l.tokens[1..], &labels, l.number)?),
                        "product" if l.tokens.len() >= 4 => {
                            let i = index(&l.tokens[1], l.number)?;
                            let j = index(&l.tokens[2], l.number)?;
                            products[i * d + j] =
                                parse_vector(field, &l.tokens[3..], &labels, l.number)?;
                        }
                        _ => {
                            return Err(spec_error(
                                l.number,
                                "expected 'basis', 'unit' or 'product <a> <b> <vector>'",
                            ))
                        }
                    }
                }
                let unit = unit.ok_or_else(|| spec_error(n, format!("algebra {name}: missing 'unit'")))?;
                at(n, &format!("algebra {name}"), Algebra::new(field, labels.clone(), products, unit))?
            }
        };
        self.algebras.insert(
            name,
            AlgebraEntry {
                algebra: Arc::new(algebra),
                group,
            },
        );
        Ok(())
    }

    fn gset(&mut self, line: &Line) -> Result<()> {
        let name = Self::name(line)?;
        let n = line.number;
        let group_arg = |k: usize| -> Result<Arc<Group>> {
            let g = line
                .tokens
                .get(k)
                .ok_or_else(|| spec_error(n, "gset needs a group name"))?;
            Ok(Self::lookup(&self.groups, "group", g, n)?.clone())
        };
        let xs = match line.tokens.get(2).map(String::as_str) {
            Some("regular") => GSet::regular(group_arg(3)?),
            Some("trivial") => GSet::trivial(group_arg(3)?, Self::usize_arg(line, 4)?),
            Some(_) => {
                let group = group_arg(2)?;
                let body = self.block_body(line)?;
                let points = body
                    .iter()
                    .find(|l| l.tokens[0] == "points")
                    .map(|l| l.tokens[1..].to_vec())
                    .ok_or_else(|| spec_error(n, format!("gset {name}: missing 'points'")))?;
                let mut action = vec![Vec::new(); points.len()];
                let index = |s: &str, ln: usize| {
                    points
                        .iter()
                        .position(|l| l == s)
                        .ok_or_else(|| spec_error(ln, format!("undefined point '{s}'")))
                };
                for l in &body {
                    match l.tokens[0].as_str() {
                        "points" => {}
                        "row" if l.tokens.len() >= 2 => {
                            let x = index(&l.tokens[1], l.number)?;
                            if l.tokens.len() - 2 != group.order() {
                                return Err(spec_error(
                                    l.number,
                                    format!(
                                        "gset {name}: row has {} images, expected {}",
                                        l.tokens.len() - 2,
                                        group.order()
                                    ),
                                ));
                            }
                            action[x] = l.tokens[2..]
                                .iter()
                                .map(|s| index(s, l.number))
                                .collect::<Result<_>>()?;
                        }
                        _ => return Err(spec_error(l.number, "expected 'points' or 'row'")),
                    }
                }
                if let Some(x) = action.iter().position(Vec::is_empty) {
                    return Err(spec_error(n, format!("gset {name}: missing row {}", points[x])));
                }
                at(n, &format!("gset {name}"), GSet::new(group, points.clone(), action))?
            }
            None => return Err(spec_error(n, "gset needs a group or a form")),
        };
        self.gsets.insert(name, xs);
        Ok(())
    }

    fn algebra_arg(&self, name: &str, line: usize) -> Result<AlgebraEntry> {
        Ok(Self::lookup(&self.algebras, "algebra", name, line)?.clone())
    }

    fn coring(&mut self, line: &Line) -> Result<()> {
        let n = line.number;
        if let Some(c) = &self.coring {
            return Err(spec_error(n, format!("a second coring; '{}' is already defined", c.name)));
        }
        let name = Self::name(line)?;
        let form = line
            .tokens
            .get(2)
            .ok_or_else(|| spec_error(n, "coring needs a form"))?
            .clone();
        let ctx = format!("coring {name}");
        let entry = match form.as_str() {
            "trivial" | "dual" => {
                let a = line
                    .tokens
                    .get(3)
                    .ok_or_else(|| spec_error(n, format!("coring {form} needs an algebra")))?;
                let a = self.algebra_arg(a, n)?.algebra;
                if form == "trivial" {
                    let labels = a.labels().to_vec();
                    let coring = at(n, &ctx, trivial_coring(a))?;
                    CoringEntry::plain(name, Arc::new(coring), labels)
                } else {
                    let labels = a.labels().iter().map(|l| format!("{l}*")).collect();
                    let coring = at(n, &ctx, dual_coalgebra(&a))?;
                    let mut e = CoringEntry::plain(name, Arc::new(coring), labels);
                    e.dual_of = Some(a);
                    e
                }
            }
            "grading" => {
                let body = self.block_body(line)?;
                self.grading_block(name, n, &body)?
            }
            "comatrix" => {
                let body = self.block_body(line)?;
                self.comatrix_block(name, n, &body)?
            }
            "explicit" => {
                let body = self.block_body(line)?;
                self.explicit_coring_block(name, n, &body)?
            }
            other => return Err(spec_error(n, format!("unknown coring form '{other}'"))),
        };
        self.coring = Some(entry);
        Ok(())
    }

    fn keyed<'a>(body: &'a [Line], key: &str) -> Option<&'a Line> {
        body.iter().find(|l| l.tokens[0] == key)
    }

    fn required<'a>(body: &'a [Line], key: &str, ctx: &str, line: usize) -> Result<&'a Line> {
        let l = Self::keyed(body, key)
            .ok_or_else(|| spec_error(line, format!("{ctx}: missing '{key}'")))?;
        if l.tokens.len() < 2 {
            return Err(spec_error(l.number, format!("{ctx}: '{key}' needs a value")));
        }
        Ok(l)
    }

    fn check_keys(body: &[Line], allowed: &[&str], ctx: &str) -> Result<()> {
        for l in body {
            if !allowed.contains(&l.tokens[0].as_str()) {
                return Err(spec_error(
                    l.number,
                    format!("{ctx}: unexpected '{}' (allowed: {})", l.tokens[0], allowed.join(", ")),
                ));
            }
        }
        Ok(())
    }

    fn grading_block(&self, name: String, n: usize, body: &[Line]) -> Result<CoringEntry> {
        let ctx = format!("coring {name}");
        Self::check_keys(body, &["algebra", "gset", "degrees"], &ctx)?;
        let a_line = Self::required(body, "algebra", &ctx, n)?;
        let entry = self.algebra_arg(&a_line.tokens[1], a_line.number)?;
        let x_line = Self::required(body, "gset", &ctx, n)?;
        let xs = Self::lookup(&self.gsets, "gset", &x_line.tokens[1], x_line.number)?.clone();
        let group = xs.group().clone();
        let graded = match Self::keyed(body, "degrees") {
            Some(l) if l.tokens.get(1).map(String::as_str) == Some("trivial") => {
                GradedAlgebra::trivially_graded(entry.algebra.clone(), group.clone())
            }
            Some(l) => {
                let degrees = l.tokens[1..]
                    .iter()
                    .map(|s| {
                        group
                            .label_index(s)
                            .ok_or_else(|| spec_error(l.number, format!("undefined group element '{s}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if degrees.len() != entry.algebra.dim() {
                    return Err(spec_error(
                        l.number,
                        format!(
                            "{ctx}: {} degrees for an algebra of dimension {}",
                            degrees.len(),
                            entry.algebra.dim()
                        ),
                    ));
                }
                at(l.number, &ctx, GradedAlgebra::new(entry.algebra.clone(), group.clone(), degrees))?
            }
            None => match &entry.group {
                Some(g) if g.table() == group.table() => {
                    GradedAlgebra::group_algebra(self.field, group.clone())
                }
                _ => {
                    return Err(spec_error(
                        n,
                        format!("{ctx}: 'degrees' is required unless the algebra is the group algebra of the G-set's group"),
                    ))
                }
            },
        };
        let gc = at(n, &ctx, grading_coring(&graded, &xs))?;
        let labels = graded
            .algebra()
            .labels()
            .iter()
            .flat_map(|a| xs.labels().iter().map(move |x| format!("{a}@{x}")))
            .collect();
        let mut e = CoringEntry::plain(name, gc.coring.clone(), labels);
        e.grading = Some(gc);
        Ok(e)
    }

    fn comatrix_block(&self, name: String, n: usize, body: &[Line]) -> Result<CoringEntry> {
        let ctx = format!("coring {name}");
        let field = self.field;
        Self::check_keys(
            body,
            &["left-algebra", "right-algebra", "dim", "left", "right", "dual-basis"],
            &ctx,
        )?;
        let b_line = Self::required(body, "left-algebra", &ctx, n)?;
        let b = self.algebra_arg(&b_line.tokens[1], b_line.number)?.algebra;
        let a_line = Self::required(body, "right-algebra", &ctx, n)?;
        let a = self.algebra_arg(&a_line.tokens[1], a_line.number)?.algebra;
        let d_line = Self::required(body, "dim", &ctx, n)?;
        let d = Self::usize_arg(d_line, 1)?;
        let left = actions(field, body, "left", &b, d, &ctx, n)?;
        let right = actions(field, body, "right", &a, d, &ctx, n)?;
        let p = at(n, &ctx, Bimodule::new(b.clone(), a.clone(), d, left, right))?;
        let p_labels: Vec<String> = (0..d).map(|i| i.to_string()).collect();
        let mut dual = Vec::new();
        for l in body.iter().filter(|l| l.tokens[0] == "dual-basis") {
            let split = l
                .tokens
                .iter()
                .position(|t| t == "[")
                .ok_or_else(|| spec_error(l.number, "dual-basis: expected '<vector> [matrix]'"))?;
            let v = parse_vector(field, &l.tokens[1..split], &p_labels, l.number)?;
            let xi = parse_matrix(field, &l.tokens[split..], l.number)?;
            if xi.shape() != (a.dim(), d) {
                return Err(spec_error(
                    l.number,
                    format!("{ctx}: dual-basis map must be {}x{d}", a.dim()),
                ));
            }
            dual.push((v, xi));
        }
        if dual.is_empty() {
            return Err(spec_error(n, format!("{ctx}: missing 'dual-basis'")));
        }
        let (coring, module) = at(n, &ctx, comatrix_coring(b, a, &p, &dual))?;
        let labels = (0..coring.dim()).map(|i| format!("c{i}")).collect();
        let mut e = CoringEntry::plain(name, coring, labels);
        e.comatrix_module = Some(module);
        Ok(e)
    }

    fn explicit_coring_block(&self, name: String, n: usize, body: &[Line]) -> Result<CoringEntry> {
        let ctx = format!("coring {name}");
        let field = self.field;
        Self::check_keys(
            body,
            &["algebra", "basis", "left", "right", "coproduct", "counit"],
            &ctx,
        )?;
        let a_line = Self::required(body, "algebra", &ctx, n)?;
        let a = self.algebra_arg(&a_line.tokens[1], a_line.number)?.algebra;
        let labels = Self::required(body, "basis", &ctx, n)?.tokens[1..].to_vec();
        let d = labels.len();
        let left = actions(field, body, "left", &a, d, &ctx, n)?;
        let right = actions(field, body, "right", &a, d, &ctx, n)?;
        let bimodule = at(n, &ctx, Bimodule::new(a.clone(), a.clone(), d, left, right))?;
        let pair_labels = pair_labels(&labels, &labels);
        let coproduct = per_basis_rows(field, body, "coproduct", &labels, &pair_labels, &ctx, n)?;
        let counit = per_basis_rows(field, body, "counit", &labels, a.labels(), &ctx, n)?;
        let raw = Matrix::from_columns(field, d * d, &coproduct);
        let counit = Matrix::from_columns(field, a.dim(), &counit);
        let coring = at(n, &ctx, Coring::from_raw_coproduct(bimodule, raw, counit))?;
        Ok(CoringEntry::plain(name, Arc::new(coring), labels))
    }

    fn current_coring(&self, line: usize) -> Result<&CoringEntry> {
        self.coring
            .as_ref()
            .ok_or_else(|| spec_error(line, "no coring has been defined yet"))
    }

    fn comodule(&mut self, line: &Line) -> Result<()> {
        let n = line.number;
        let name = Self::name(line)?;
        if self.comodules.iter().any(|c| c.name == name) {
            return Err(spec_error(n, format!("comodule '{name}' is already defined")));
        }
        let field = self.field;
        let form = line
            .tokens
            .get(2)
            .ok_or_else(|| spec_error(n, "comodule needs a form"))?
            .clone();
        let ctx = format!("comodule {name}");
        let entry = self.current_coring(n)?.clone();
        let coring = entry.coring.clone();
        let a = coring.algebra().clone();
        let mut graded = None;
        let comodule = match form.as_str() {
            "regular" => at(n, &ctx, Comodule::regular(coring))?,
            "comatrix" => entry
                .comatrix_module
                .clone()
                .ok_or_else(|| spec_error(n, format!("{ctx}: the coring is not a comatrix coring")))?,
            "induced" => {
                let body = self.block_body(line)?;
                Self::check_keys(&body, &["free", "dim", "action"], &ctx)?;
                let module = module_from_body(field, &body, &a, &ctx, n)?;
                at(n, &ctx, induced_comodule(&coring, &module))?
            }
            "graded" => {
                let gc = entry
                    .grading
                    .clone()
                    .ok_or_else(|| spec_error(n, format!("{ctx}: the coring is not a grading coring")))?;
                let body = self.block_body(line)?;
                Self::check_keys(&body, &["shifted", "dim", "action", "grades"], &ctx)?;
                let point = |s: &str, ln: usize| {
                    gc.xs
                        .label_index(s)
                        .ok_or_else(|| spec_error(ln, format!("undefined point '{s}'")))
                };
                let mut gm = GradedModule::zero(&gc);
                for l in body.iter().filter(|l| l.tokens[0] == "shifted") {
                    for s in &l.tokens[1..] {
                        let x = point(s, l.number)?;
                        let shifted = at(l.number, &ctx, gc.shifted_free(x))?;
                        gm = at(l.number, &ctx, gm.direct_sum(&gc, &shifted))?;
                    }
                }
                if let Some(g) = Self::keyed(&body, "grades") {
                    let module = module_from_body(field, &body, &a, &ctx, n)?;
                    let grades = g.tokens[1..]
                        .iter()
                        .map(|s| point(s, g.number))
                        .collect::<Result<Vec<_>>>()?;
                    let explicit = at(g.number, &ctx, GradedModule::new(&gc, module, grades))?;
                    gm = at(g.number, &ctx, gm.direct_sum(&gc, &explicit))?;
                }
                let m = at(n, &ctx, gc.graded_comodule(&gm))?;
                graded = Some(gm);
                m
            }
            "left-module" => {
                let b = entry
                    .dual_of
                    .clone()
                    .ok_or_else(|| spec_error(n, format!("{ctx}: the coring is not a dual coalgebra")))?;
                let body = self.block_body(line)?;
                Self::check_keys(&body, &["dim", "left"], &ctx)?;
                let d = Self::usize_arg(Self::required(&body, "dim", &ctx, n)?, 1)?;
                let left = actions(field, &body, "left", &b, d, &ctx, n)?;
                at(n, &ctx, dual_coalgebra_comodule(coring, &left))?
            }
            "explicit" => {
                let body = self.block_body(line)?;
                Self::check_keys(&body, &["free", "dim", "action", "coaction"], &ctx)?;
                let module = module_from_body(field, &body, &a, &ctx, n)?;
                let m_labels: Vec<String> = (0..module.dim()).map(|i| i.to_string()).collect();
                let targets = pair_labels(&m_labels, &entry.labels);
                let columns =
                    per_basis_rows(field, &body, "coaction", &m_labels, &targets, &ctx, n)?;
                let raw = Matrix::from_columns(field, targets.len(), &columns);
                at(n, &ctx, Comodule::from_raw_coaction(coring, module, &raw))?
            }
            other => return Err(spec_error(n, format!("unknown comodule form '{other}'"))),
        };
        self.comodules.push(DeclaredComodule {
            name,
            comodule,
            graded,
        });
        Ok(())
    }

    fn cointegral(&mut self, line: &Line) -> Result<()> {
        let n = line.number;
        let decl = match line.tokens.get(1).map(String::as_str) {
            Some("kronecker") => CointegralDecl::Kronecker,
            None => CointegralDecl::Pairs(self.block_body(line)?),
            Some(other) => return Err(spec_error(n, format!("unknown cointegral form '{other}'"))),
        };
        self.cointegral = Some((n, decl));
        Ok(())
    }

    fn finish(self) -> Result<InstanceSpec> {
        let entry = self.coring.ok_or(Error::NoInstance)?;
        let field = self.field;
        let coring = entry.coring.clone();
        let cointegral = match self.cointegral {
            None => None,
            Some((n, CointegralDecl::Kronecker)) => {
                let gc = entry.grading.as_ref().ok_or_else(|| {
                    spec_error(n, "cointegral kronecker needs a grading coring")
                })?;
                Some(at(n, "cointegral", gc.delta_cointegral())?)
            }
            Some((n, CointegralDecl::Pairs(body))) => {
                let d = coring.dim();
                let a = coring.algebra();
                let mut raw = Matrix::zeros(field, a.dim(), d * d);
                for l in &body {
                    if l.tokens[0] != "pair" || l.tokens.len() < 4 {
                        return Err(spec_error(l.number, "expected 'pair <c> <c> <vector over A>'"));
                    }
                    let i = label_index(&entry.labels, &l.tokens[1], l.number)?;
                    let j = label_index(&entry.labels, &l.tokens[2], l.number)?;
                    let v = parse_vector(field, &l.tokens[3..], a.labels(), l.number)?;
                    for (k, x) in v.into_iter().enumerate() {
                        raw.set(k, i * d + j, x);
                    }
                }
                Some(at(n, "cointegral", Cointegral::from_raw_pairs(&coring, &raw))?)
            }
        };
        let element = match self.element {
            None => None,
            Some((n, tokens)) if tokens[0] == "fixed" => {
                let gc = entry
                    .grading
                    .as_ref()
                    .ok_or_else(|| spec_error(n, "element fixed needs a grading coring"))?;
                let label = tokens
                    .get(1)
                    .ok_or_else(|| spec_error(n, "element fixed needs a point"))?;
                gc.xs
                    .label_index(label)
                    .ok_or_else(|| spec_error(n, format!("undefined point '{label}'")))?;
                Some(ElementChoice::FixedPoint(label.clone()))
            }
            Some((n, tokens)) => Some(ElementChoice::Explicit(parse_vector(
                field,
                &tokens,
                &entry.labels,
                n,
            )?)),
        };
        Ok(InstanceSpec {
            field,
            coring_name: entry.name,
            coring,
            basis_labels: entry.labels,
            grading: entry.grading,
            comodules: self.comodules,
            cointegral,
            element,
        })
    }
}

impl CoringEntry {
    fn plain(name: String, coring: Arc<Coring>, labels: Vec<String>) -> Self {
        CoringEntry {
            name,
            coring,
            labels,
            grading: None,
            comatrix_module: None,
            dual_of: None,
        }
    }
}

fn pair_labels(first: &[String], second: &[String]) -> Vec<String> {
    first
        .iter()
        .flat_map(|a| second.iter().map(move |b| format!("{a}|{b}")))
        .collect()
}

fn label_index(labels: &[String], s: &str, line: usize) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == s)
        .ok_or_else(|| spec_error(line, format!("undefined label '{s}'")))
}

/// A dense list of `labels.len()` scalars, or terms `coef*label` / `label`
/// / `-label`.
pub fn parse_vector_tokens(
    field: Field,
    tokens: &[String],
    labels: &[String],
) -> std::result::Result<Vec<Scalar>, String> {
    if tokens.iter().all(|t| field.parse_scalar(t).is_ok()) && tokens.len() == labels.len() {
        return Ok(tokens.iter().map(|t| field.parse_scalar(t).expect("checked")).collect());
    }
    let mut v = vec![field.zero(); labels.len()];
    for t in tokens {
        let (coef, label) = match t.rsplit_once('*') {
            Some((c, l)) => (
                field.parse_scalar(c).map_err(|_| format!("bad coefficient in '{t}'"))?,
                l,
            ),
            None => match t.strip_prefix('-') {
                Some(l) if labels.iter().any(|x| x == l) => (-&field.one(), l),
                _ => (field.one(), t.as_str()),
            },
        };
        let i = labels.iter().position(|l| l == label).ok_or_else(|| {
            if field.parse_scalar(t).is_ok() {
                format!("expected {} scalars, found {}", labels.len(), tokens.len())
            } else {
                format!("undefined label '{label}'")
            }
        })?;
        v[i] += &coef;
    }
    Ok(v)
}

fn parse_vector(field: Field, tokens: &[String], labels: &[String], line: usize) -> Result<Vec<Scalar>> {
    parse_vector_tokens(field, tokens, labels).map_err(|m| spec_error(line, m))
}

/// `[a b; c d]`.
fn parse_matrix(field: Field, tokens: &[String], line: usize) -> Result<Matrix> {
    if tokens.first().map(String::as_str) != Some("[") || tokens.last().map(String::as_str) != Some("]") {
        return Err(spec_error(line, "expected a matrix '[a b; c d]'"));
    }
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::new()];
    for t in &tokens[1..tokens.len() - 1] {
        if t == ";" {
            rows.push(Vec::new());
        } else {
            let s = field
                .parse_scalar(t)
                .map_err(|_| spec_error(line, format!("bad matrix entry '{t}'")))?;
            rows.last_mut().expect("nonempty").push(s);
        }
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(spec_error(line, "matrix rows have different lengths"));
    }
    Ok(Matrix::from_rows(field, cols, rows))
}

/// `<key> <algebra label> [matrix]` lines: one `d × d` action matrix per
/// basis element of `a`.
fn actions(
    field: Field,
    body: &[Line],
    key: &str,
    a: &Algebra,
    d: usize,
    ctx: &str,
    block_line: usize,
) -> Result<Vec<Matrix>> {
    let mut out: Vec<Option<Matrix>> = vec![None; a.dim()];
    for l in body.iter().filter(|l| l.tokens[0] == key) {
        let label = l
            .tokens
            .get(1)
            .ok_or_else(|| spec_error(l.number, format!("{ctx}: '{key}' needs a label")))?;
        let i = label_index(a.labels(), label, l.number)?;
        let m = parse_matrix(field, &l.tokens[2..], l.number)?;
        if m.shape() != (d, d) {
            return Err(spec_error(
                l.number,
                format!("{ctx}: {key} action of {label} is {}x{}, expected {d}x{d}", m.rows(), m.cols()),
            ));
        }
        out[i] = Some(m);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| {
                spec_error(
                    block_line,
                    format!("{ctx}: missing {key} action of {}", a.labels()[i]),
                )
            })
        })
        .collect()
}

/// `free <r>`, or `dim <d>` with one `action` per basis element.
fn module_from_body(
    field: Field,
    body: &[Line],
    a: &Arc<Algebra>,
    ctx: &str,
    n: usize,
) -> Result<RightModule> {
    if let Some(l) = Parser::keyed(body, "free") {
        return Ok(RightModule::free(a.clone(), Parser::usize_arg(l, 1)?));
    }
    let d = Parser::usize_arg(Parser::required(body, "dim", ctx, n)?, 1)?;
    let action = actions(field, body, "action", a, d, ctx, n)?;
    at(n, ctx, RightModule::new(a.clone(), d, action))
}

/// One `<key> <basis label> <vector>` line per entry of `basis`; returns
/// the vectors in basis order.
fn per_basis_rows(
    field: Field,
    body: &[Line],
    key: &str,
    basis: &[String],
    target: &[String],
    ctx: &str,
    n: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let rows: Vec<&Line> = body.iter().filter(|l| l.tokens[0] == key).collect();
    if rows.len() != basis.len() {
        return Err(spec_error(
            rows.first().map_or(n, |l| l.number),
            format!(
                "{ctx}: {key} has {} rows, expected {} (one per basis element)",
                rows.len(),
                basis.len()
            ),
        ));
    }
    let mut out = vec![None; basis.len()];
    for l in rows {
        let label = l
            .tokens
            .get(1)
            .ok_or_else(|| spec_error(l.number, format!("{ctx}: '{key}' needs a label")))?;
        let i = label_index(basis, label, l.number)?;
        if out[i].is_some() {
            return Err(spec_error(l.number, format!("{ctx}: {key} of {label} given twice")));
        }
        out[i] = Some(parse_vector(field, &l.tokens[2..], target, l.number)?);
    }
    Ok(out.into_iter().map(|v| v.expect("one row per label")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_has_no_instance() {
        let err = parse_spec("# nothing\n\n", None).unwrap_err();
        assert!(err.to_string().contains("no instance"), "{err}");
    }

    #[test]
    fn vectors_accept_dense_and_labeled_forms() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let q = Field::Rational;
        let dense = parse_vector_tokens(q, &["1".into(), "0".into(), "-1/2".into()], &labels).unwrap();
        let terms = parse_vector_tokens(q, &["a".into(), "-1/2*c".into()], &labels).unwrap();
        assert_eq!(dense, terms);
        let neg = parse_vector_tokens(q, &["-b".into()], &labels).unwrap();
        assert_eq!(neg, q.vector(&[0, -1, 0]));
    }

    #[test]
    fn wrong_coproduct_row_count_names_the_block() {
        let text = "\
algebra k ground
coring C explicit
  algebra k
  basis u v
  left 1 [1 0; 0 1]
  right 1 [1 0; 0 1]
  coproduct u u|u
  counit u 1
  counit v 1
end
";
        let err = parse_spec(text, None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("coring C") && msg.contains("coproduct has 1 rows"), "{msg}");
    }

    #[test]
    fn undefined_reference_reports_its_line() {
        let err = parse_spec("coring C trivial B\n", None).unwrap_err();
        assert_eq!(err.to_string(), "line 1: undefined algebra 'B'");
    }
}
