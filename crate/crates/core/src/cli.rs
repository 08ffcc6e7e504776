//! Problem files, command dispatch and text/JSON rendering.
//!
//! A problem file is TOML:
//!
//! ```toml
//! [group]
//! generators = ["(1 2)", "(3 4)"]
//! order_cap = 128
//!
//! [subgroups]
//! H1 = ["(1 2)"]
//!
//! [torus]
//! spec = "sum(norm1, perm(H1))"
//!
//! [places]
//! mode = "chebotarev"            # or "explicit", "mixed"
//! assume_cyclic_ramification = true
//! extra = ["H1"]                 # subgroup labels for explicit/mixed mode
//! complete = false               # explicit/mixed: the list covers every ramified place
//!
//! [assumptions]
//! global_point = false
//! local_points_everywhere = true
//! pic_order = 2                  # optional
//! ```
//!
//! Torus specs: `split(d)`, `weil`, `norm1`, `perm(LABEL)`, `dual(spec)`,
//! `sum(spec, spec, ...)` and `explicit([[..],..], ...)` with one matrix per
//! group generator.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::{FinAbGroup, IntMatrix};
use crate::arith::{
    arith_report, sha_group, verify_identities, ArithError, ArithReport, Check, Place, PlaceMode,
    PlaceProfile, TorsorAssumptions,
};
use crate::group::{
    subgroup_closure, FiniteGroup, GroupError, Permutation, Subgroup, DEFAULT_ORDER_CAP,
};
use crate::lattice::{build_torus_lattice, GLattice, LatticeError, SubgroupTable, TorusSpec};
use crate::tate::{tate_group_with, Degree, TateError, TateOptions};

pub const ORDER_CAP_ENV: &str = "TATE_TORI_ORDER_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown subgroup label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    BadPermutation(GroupError),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl CliError {
    /// 1 for computation errors, 2 for parse and validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Group(_) | CliError::Tate(_) => 1,
            CliError::Arith(ArithError::InconsistentAssumptions(_) | ArithError::BadPlaces(_)) => 2,
            CliError::Arith(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacesSection {
    pub mode: PlaceMode,
    pub assume_cyclic_ramification: bool,
    pub extra: Vec<String>,
    pub complete: bool,
}

impl Default for PlacesSection {
    fn default() -> Self {
        Self {
            mode: PlaceMode::Chebotarev,
            assume_cyclic_ramification: false,
            extra: Vec::new(),
            complete: false,
        }
    }
}

/// A parsed problem file. Permutations are stored in canonical cycle notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub generators: Vec<String>,
    pub order_cap: usize,
    pub subgroups: BTreeMap<String, Vec<String>>,
    pub torus: TorusSpec,
    pub places: PlacesSection,
    pub assumptions: TorsorAssumptions,
}

/// A problem with its group, subgroups and lattice built.
pub struct Instance {
    pub group: Arc<FiniteGroup>,
    pub subgroups: SubgroupTable,
    pub lattice: GLattice,
    pub places: PlaceProfile,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    group: RawGroup,
    #[serde(default)]
    subgroups: BTreeMap<String, Vec<String>>,
    torus: RawTorus,
    #[serde(default)]
    places: RawPlaces,
    #[serde(default)]
    assumptions: RawAssumptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    generators: Vec<String>,
    order_cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    spec: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPlaces {
    mode: Option<String>,
    #[serde(default)]
    assume_cyclic_ramification: bool,
    #[serde(default)]
    extra: Vec<String>,
    #[serde(default)]
    complete: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInteger {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAssumptions {
    #[serde(default)]
    global_point: bool,
    #[serde(default = "yes")]
    local_points_everywhere: bool,
    pic_order: Option<RawInteger>,
}

fn yes() -> bool {
    true
}

impl Default for RawAssumptions {
    fn default() -> Self {
        Self {
            global_point: false,
            local_points_everywhere: true,
            pic_order: None,
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn canonical_permutation(text: &str) -> Result<String, CliError> {
    Permutation::parse(text)
        .map(|p| p.to_string())
        .map_err(CliError::BadPermutation)
}

pub fn parse_problem_file(text: &str) -> Result<Problem, CliError> {
    let raw: RawProblem = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        CliError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let generators = raw
        .group
        .generators
        .iter()
        .map(|g| canonical_permutation(g))
        .collect::<Result<Vec<_>, _>>()?;
    if generators.is_empty() {
        return Err(CliError::Invalid(
            "the group needs at least one generator".into(),
        ));
    }
    let mut subgroups = BTreeMap::new();
    for (label, gens) in raw.subgroups {
        let gens = gens
            .iter()
            .map(|g| canonical_permutation(g))
            .collect::<Result<Vec<_>, _>>()?;
        subgroups.insert(label, gens);
    }
    let torus = parse_torus_spec(&raw.torus.spec)?;
    for label in torus.labels() {
        if !subgroups.contains_key(label) {
            return Err(CliError::UnknownLabel(label.to_string()));
        }
    }

    let mode = match raw.places.mode.as_deref() {
        None | Some("chebotarev") => PlaceMode::Chebotarev,
        Some("explicit") => PlaceMode::Explicit,
        Some("mixed") => PlaceMode::Mixed,
        Some(other) => return Err(CliError::Invalid(format!("unknown places mode {other:?}"))),
    };
    for label in &raw.places.extra {
        if !subgroups.contains_key(label) {
            return Err(CliError::UnknownLabel(label.clone()));
        }
    }
    let places = PlacesSection {
        mode,
        assume_cyclic_ramification: raw.places.assume_cyclic_ramification,
        extra: raw.places.extra,
        complete: raw.places.complete,
    };

    let pic_order_override = match raw.assumptions.pic_order {
        None => None,
        Some(RawInteger::Int(i)) => Some(BigInt::from(i)),
        Some(RawInteger::Text(s)) => Some(
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Invalid(format!("pic_order {s:?} is not an integer")))?,
        ),
    };
    let assumptions = TorsorAssumptions {
        has_global_point: raw.assumptions.global_point,
        has_local_points_everywhere: raw.assumptions.local_points_everywhere,
        pic_order_override,
    };
    assumptions.validate()?;

    Ok(Problem {
        generators,
        order_cap: raw.group.order_cap.unwrap_or(DEFAULT_ORDER_CAP),
        subgroups,
        torus,
        places,
        assumptions,
    })
}

fn quoted_list(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| format!("{s:?}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Renders a problem as a problem file that parses back to the same value.
pub fn print_problem(p: &Problem) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "[group]\ngenerators = {}\norder_cap = {}\n",
        quoted_list(&p.generators),
        p.order_cap
    );
    out.push_str("[subgroups]\n");
    for (label, gens) in &p.subgroups {
        let _ = writeln!(out, "{label:?} = {}", quoted_list(gens));
    }
    let _ = writeln!(out, "\n[torus]\nspec = {:?}\n", format_torus_spec(&p.torus));
    let _ = writeln!(
        out,
        "[places]\nmode = {:?}\nassume_cyclic_ramification = {}\nextra = {}\ncomplete = {}\n",
        p.places.mode.as_str(),
        p.places.assume_cyclic_ramification,
        quoted_list(&p.places.extra),
        p.places.complete
    );
    let _ = writeln!(
        out,
        "[assumptions]\nglobal_point = {}\nlocal_points_everywhere = {}",
        p.assumptions.has_global_point, p.assumptions.has_local_points_everywhere
    );
    if let Some(n) = &p.assumptions.pic_order_override {
        let _ = writeln!(out, "pic_order = \"{n}\"");
    }
    out
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> SpecParser<'a> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: 1,
            column: self.text[..self.pos].chars().count() + 1,
            message: format!("torus spec: {}", message.into()),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn integer(&mut self) -> Result<BigInt, CliError> {
        self.skip_ws();
        let start = self.pos;
        if self.text[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        let digits = self.text[self.pos..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - self.pos);
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += digits;
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn int_list(&mut self) -> Result<Vec<BigInt>, CliError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn matrix(&mut self) -> Result<IntMatrix, CliError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            rows.push(self.int_list()?);
            if self.eat(']') {
                break;
            }
            self.expect(',')?;
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.error("explicit matrices must be square"));
        }
        Ok(IntMatrix::from_entries(
            n,
            n,
            rows.into_iter().flatten().collect(),
        ))
    }

    fn spec(&mut self) -> Result<TorusSpec, CliError> {
        let name = self.word();
        match name {
            "weil" => Ok(TorusSpec::WeilRestriction),
            "norm1" => Ok(TorusSpec::NormOne),
            "split" => {
                self.expect('(')?;
                let d = self.integer()?;
                self.expect(')')?;
                let d = usize::try_from(d)
                    .map_err(|_| self.error("split rank must be a non-negative integer"))?;
                Ok(TorusSpec::Split(d))
            }
            "perm" => {
                self.expect('(')?;
                let label = self.word().to_string();
                if label.is_empty() {
                    return Err(self.error("expected a subgroup label"));
                }
                self.expect(')')?;
                Ok(TorusSpec::Permutation(label))
            }
            "dual" => {
                self.expect('(')?;
                let inner = self.spec()?;
                self.expect(')')?;
                Ok(TorusSpec::Dual(Box::new(inner)))
            }
            "sum" => {
                self.expect('(')?;
                let mut acc = self.spec()?;
                self.expect(',')?;
                loop {
                    let next = self.spec()?;
                    acc = TorusSpec::Sum(Box::new(acc), Box::new(next));
                    if self.eat(')') {
                        return Ok(acc);
                    }
                    self.expect(',')?;
                }
            }
            "explicit" => {
                self.expect('(')?;
                let mut mats = vec![self.matrix()?];
                while self.eat(',') {
                    mats.push(self.matrix()?);
                }
                self.expect(')')?;
                if mats.iter().any(|m| m.rows() != mats[0].rows()) {
                    return Err(self.error("explicit matrices must share one size"));
                }
                Ok(TorusSpec::Explicit(mats))
            }
            "" => Err(self.error("expected a torus constructor")),
            other => Err(self.error(format!("unknown constructor {other:?}"))),
        }
    }
}

pub fn parse_torus_spec(text: &str) -> Result<TorusSpec, CliError> {
    let mut p = SpecParser { text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(spec)
}

fn format_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let r: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn format_torus_spec(spec: &TorusSpec) -> String {
    match spec {
        TorusSpec::Split(d) => format!("split({d})"),
        TorusSpec::WeilRestriction => "weil".into(),
        TorusSpec::NormOne => "norm1".into(),
        TorusSpec::Permutation(l) => format!("perm({l})"),
        TorusSpec::Dual(e) => format!("dual({})", format_torus_spec(e)),
        TorusSpec::Sum(a, b) => format!("sum({}, {})", format_torus_spec(a), format_torus_spec(b)),
        TorusSpec::Explicit(mats) => {
            let parts: Vec<String> = mats.iter().map(format_matrix).collect();
            format!("explicit({})", parts.join(", "))
        }
    }
}

/// The order cap from `TATE_TORI_ORDER_CAP`, if set.
pub fn order_cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(ORDER_CAP_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::Invalid(format!(
                "{ORDER_CAP_ENV}={v:?} is not a non-negative integer"
            ))
        }),
    }
}

fn build_subgroup(
    g: &Arc<FiniteGroup>,
    label: &str,
    gens: &[String],
) -> Result<Subgroup, CliError> {
    let mut idx = Vec::with_capacity(gens.len());
    for s in gens {
        let p = Permutation::parse(s).map_err(CliError::BadPermutation)?;
        let i = g.index_of(&p).ok_or_else(|| {
            CliError::Invalid(format!(
                "subgroup {label}: {s} is not an element of the group"
            ))
        })?;
        idx.push(i);
    }
    subgroup_closure(g, &idx).map_err(CliError::Group)
}

impl Problem {
    pub fn instantiate(&self, order_cap_override: Option<usize>) -> Result<Instance, CliError> {
        let cap = order_cap_override.unwrap_or(self.order_cap);
        let group = Arc::new(
            FiniteGroup::from_cycle_strings(&self.generators, cap).map_err(|e| match e {
                GroupError::BadPermutation { .. } => CliError::BadPermutation(e),
                other => CliError::Group(other),
            })?,
        );
        let mut subgroups = SubgroupTable::new();
        for (label, gens) in &self.subgroups {
            subgroups.insert(label.clone(), build_subgroup(&group, label, gens)?);
        }
        let lattice = build_torus_lattice(&group, &self.torus, &subgroups)?;
        let listed: Vec<Place> = self
            .places
            .extra
            .iter()
            .map(|l| Place {
                label: l.clone(),
                decomposition_group: subgroups[l].clone(),
            })
            .collect();
        let places = match self.places.mode {
            PlaceMode::Chebotarev => {
                if !listed.is_empty() {
                    return Err(CliError::Invalid(
                        "extra places need mode = \"mixed\" or \"explicit\"".into(),
                    ));
                }
                PlaceProfile::chebotarev(&group, self.places.assume_cyclic_ramification)
            }
            PlaceMode::Mixed => PlaceProfile::mixed(
                &group,
                listed,
                self.places.complete || self.places.assume_cyclic_ramification,
            )?,
            PlaceMode::Explicit => PlaceProfile::explicit(&group, listed, self.places.complete)?,
        };
        Ok(Instance {
            group,
            subgroups,
            lattice,
            places,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Cohomology,
    Sha,
    Report,
    Verify,
}

impl std::str::FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "cohomology" => Ok(Command::Cohomology),
            "sha" => Ok(Command::Sha),
            "report" => Ok(Command::Report),
            "verify" => Ok(Command::Verify),
            other => Err(CliError::Invalid(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub degree: Option<i32>,
    pub no_fast_path: bool,
    pub force: bool,
    pub order_cap_override: Option<usize>,
}

impl Flags {
    fn tate_options(&self) -> TateOptions {
        TateOptions {
            fast_path: !self.no_fast_path,
            force: self.force,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn error(e: &CliError) -> Self {
        Self {
            exit_code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn group_json(g: &FinAbGroup) -> Value {
    let factors: Vec<String> = g
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut v = json!({
        "invariant_factors": factors,
        "order": g.order().map(|o| o.to_string()),
    });
    if g.free_rank() > 0 {
        v["free_rank"] = json!(g.free_rank());
    }
    v
}

fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "pass": c.passed(),
        "status": c.outcome.as_str(),
        "details": c.details,
    })
}

fn header_json(inst: &Instance, problem: &Problem) -> serde_json::Map<String, Value> {
    let gens: Vec<String> = inst
        .group
        .generators()
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut m = serde_json::Map::new();
    m.insert(
        "group".into(),
        json!({ "order": inst.group.order().to_string(), "generators": gens }),
    );
    m.insert(
        "torus".into(),
        json!({ "spec": format_torus_spec(&problem.torus), "rank": inst.lattice.rank() }),
    );
    m
}

fn render_json(map: serde_json::Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn degrees(flags: &Flags) -> Result<Vec<Degree>, CliError> {
    match flags.degree {
        None => Ok(Degree::ALL.to_vec()),
        Some(i) => Ok(vec![Degree::try_from(i).map_err(|_| {
            CliError::Invalid(format!("degree {i} is outside -1..=2"))
        })?]),
    }
}

fn report_json(
    r: &ArithReport,
    mut m: serde_json::Map<String, Value>,
) -> serde_json::Map<String, Value> {
    let coh: serde_json::Map<String, Value> = r
        .cohomology
        .iter()
        .map(|(d, g)| (d.to_string(), group_json(g)))
        .collect();
    m.insert("cohomology".into(), Value::Object(coh));
    let mut sha = group_json(&r.sha);
    sha["exact"] = json!(r.sha_is_exact);
    m.insert("sha".into(), sha);
    m.insert(
        "pic_order".into(),
        json!(r.pic_order.as_ref().map(ToString::to_string)),
    );
    m.insert(
        "h_defect_order".into(),
        json!(r.h_defect_order.as_ref().map(ToString::to_string)),
    );
    let mut br = group_json(&r.brauer_quotient);
    br["exact"] = json!(r.brauer_quotient_is_exact);
    m.insert("brauer_quotient".into(), br);
    m.insert(
        "herbrand".into(),
        r.herbrand.as_ref().map_or(Value::Null, rational_json),
    );
    let mut tau = rational_json(&r.tamagawa);
    tau["certified"] = json!(r.tamagawa_certified);
    m.insert("tamagawa".into(), tau);
    let local: Vec<Value> = r
        .local_indices
        .iter()
        .map(|(place, order)| json!({ "place": place, "order": order.to_string() }))
        .collect();
    m.insert("local_indices".into(), Value::Array(local));
    m.insert("divisibility_notes".into(), json!(r.divisibility_notes));
    m.insert(
        "checks".into(),
        Value::Array(r.identity_checks.iter().map(check_json).collect()),
    );
    m
}

fn optional(v: &Option<BigInt>) -> String {
    v.as_ref().map_or("unknown".into(), ToString::to_string)
}

fn check_line(c: &Check) -> String {
    format!("[{}] {}: {}", c.outcome.as_str(), c.name, c.details)
}

fn report_text(r: &ArithReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", r.group_descriptor);
    let _ = writeln!(out, "torus: {} (rank {})", r.torus_descriptor, r.rank);
    for (d, g) in &r.cohomology {
        let _ = writeln!(out, "H^{d} = {g}");
    }
    let _ = writeln!(
        out,
        "Sha = {} ({})",
        r.sha,
        if r.sha_is_exact {
            "exact"
        } else {
            "upper bound"
        }
    );
    let _ = writeln!(out, "Pic order: {}", optional(&r.pic_order));
    let _ = writeln!(out, "H defect order: {}", optional(&r.h_defect_order));
    let _ = writeln!(
        out,
        "Br_1/Br_0: {} ({})",
        r.brauer_quotient,
        if r.brauer_quotient_is_exact {
            "exact"
        } else {
            "embeds"
        }
    );
    let _ = writeln!(
        out,
        "Herbrand quotient: {}",
        r.herbrand
            .as_ref()
            .map_or("n/a".into(), ToString::to_string)
    );
    let _ = writeln!(
        out,
        "Tamagawa number: {}{}",
        r.tamagawa,
        if r.tamagawa_certified {
            ""
        } else {
            " (lower bound)"
        }
    );
    out.push_str("local norm indices:\n");
    for (place, order) in &r.local_indices {
        let _ = writeln!(out, "  {place}: {order}");
    }
    out.push_str("notes:\n");
    for n in &r.divisibility_notes {
        let _ = writeln!(out, "  {n}");
    }
    out.push_str("checks:\n");
    for c in &r.identity_checks {
        let _ = writeln!(out, "  {}", check_line(c));
    }
    out
}

fn execute(problem: &Problem, command: Command, flags: &Flags) -> Result<CommandOutput, CliError> {
    let inst = problem.instantiate(flags.order_cap_override)?;
    let opts = flags.tate_options();
    let m = &inst.lattice;
    let mut exit_code = 0;
    let stdout = match command {
        Command::Cohomology => {
            let degs = degrees(flags)?;
            let groups = degs
                .iter()
                .map(|&d| Ok((d, tate_group_with(m, d, &opts)?.structure().clone())))
                .collect::<Result<Vec<_>, CliError>>()?;
            if flags.json {
                let mut j = header_json(&inst, problem);
                let coh: serde_json::Map<String, Value> = groups
                    .iter()
                    .map(|(d, g)| (d.to_string(), group_json(g)))
                    .collect();
                j.insert("cohomology".into(), Value::Object(coh));
                render_json(j)
            } else {
                groups
                    .iter()
                    .map(|(d, g)| format!("H^{d} = {g}\n"))
                    .collect()
            }
        }
        Command::Sha => {
            let sha = sha_group(m, &inst.places, &opts)?;
            if flags.json {
                let mut j = header_json(&inst, problem);
                let mut s = group_json(&sha.group);
                s["exact"] = json!(sha.exact);
                j.insert("sha".into(), s);
                j.insert("exact".into(), json!(sha.exact));
                render_json(j)
            } else {
                format!(
                    "Sha = {} ({})\n",
                    sha.group,
                    if sha.exact { "exact" } else { "upper bound" }
                )
            }
        }
        Command::Report => {
            let r = arith_report(
                m,
                &format_torus_spec(&problem.torus),
                &inst.places,
                &problem.assumptions,
                &opts,
            )?;
            if flags.json {
                render_json(report_json(&r, header_json(&inst, problem)))
            } else {
                report_text(&r)
            }
        }
        Command::Verify => {
            let checks = verify_identities(m, &inst.places, &opts)?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                exit_code = 3;
            }
            if flags.json {
                let mut j = header_json(&inst, problem);
                j.insert(
                    "checks".into(),
                    Value::Array(checks.iter().map(check_json).collect()),
                );
                j.insert("pass".into(), json!(failed == 0));
                render_json(j)
            } else {
                let mut s: String = checks.iter().map(|c| check_line(c) + "\n").collect();
                if failed == 0 {
                    s.push_str("all checks passed\n");
                } else {
                    let _ = writeln!(s, "{failed} check(s) failed");
                }
                s
            }
        }
    };
    Ok(CommandOutput {
        exit_code,
        stdout,
        stderr: String::new(),
    })
}

pub fn run_command(problem: &Problem, command: Command, flags: &Flags) -> CommandOutput {
    execute(problem, command, flags).unwrap_or_else(|e| CommandOutput::error(&e))
}

/// Parses `text` and runs `command`; parse failures exit with code 2.
pub fn run_text(text: &str, command: Command, flags: &Flags) -> CommandOutput {
    match parse_problem_file(text) {
        Ok(p) => run_command(&p, command, flags),
        Err(e) => CommandOutput::error(&e),
    }
}
