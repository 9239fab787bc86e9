//! Report rows and their JSON / CSV rendering. Rationals stay exact; `--pretty` adds decimals.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::localfield::LocalField;
use crate::phimodule::{CutOut, TorsionPhiModule};
use crate::rat::{fmt, to_f64, Q};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

enum Cell {
    Int(u64),
    Text(String),
    Flag(bool),
    Frac(Q),
    Missing,
}

impl Cell {
    fn opt_frac(x: &Option<Q>) -> Cell {
        x.clone().map(Cell::Frac).unwrap_or(Cell::Missing)
    }
}

type Cells = Vec<(&'static str, Cell)>;

fn expand(cells: Cells, pretty: bool) -> Vec<(String, Value)> {
    let mut out = Vec::new();
    for (key, cell) in cells {
        match cell {
            Cell::Int(v) => out.push((key.to_string(), json!(v))),
            Cell::Text(s) => out.push((key.to_string(), json!(s))),
            Cell::Flag(b) => out.push((key.to_string(), json!(b))),
            Cell::Missing => {
                out.push((key.to_string(), Value::Null));
                if pretty {
                    out.push((format!("{key}_decimal"), Value::Null));
                }
            }
            Cell::Frac(q) => {
                out.push((key.to_string(), json!(fmt(&q))));
                if pretty {
                    out.push((format!("{key}_decimal"), json!(to_f64(&q))));
                }
            }
        }
    }
    out
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_text(records: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in records {
        w.write_record(r).map_err(|e| Error::Input(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Input(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Input(format!("csv: {e}")))
}

fn render_table(rows: Vec<Cells>, format: Format, pretty: bool) -> Result<String> {
    let rows: Vec<Vec<(String, Value)>> = rows.into_iter().map(|r| expand(r, pretty)).collect();
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(r.into_iter().collect::<Map<_, _>>()))
                .collect();
            json_text(&Value::Array(arr), pretty)
        }
        Format::Csv => {
            let mut records = Vec::new();
            if let Some(first) = rows.first() {
                records.push(first.iter().map(|(k, _)| k.clone()).collect());
            }
            for r in &rows {
                records.push(r.iter().map(|(_, v)| csv_field(v)).collect());
            }
            csv_text(&records)
        }
    }
}

fn json_text(v: &Value, pretty: bool) -> Result<String> {
    let s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    s.map(|t| t + "\n").map_err(|e| Error::Input(format!("json: {e}")))
}

pub struct BoundRow {
    p: u64,
    e: u32,
    r: u32,
    n: u32,
    u: Q,
}

impl BoundRow {
    pub fn new(p: u64, e: u32, r: u32, n: u32, u: Q) -> BoundRow {
        BoundRow { p, e, r, n, u }
    }

    fn cells(&self) -> Cells {
        vec![
            ("p", Cell::Int(self.p)),
            ("e", Cell::Int(self.e as u64)),
            ("r", Cell::Int(self.r as u64)),
            ("n", Cell::Int(self.n as u64)),
            ("u", Cell::Frac(self.u.clone())),
        ]
    }
}

pub struct PjRow {
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub lo: Q,
    pub hi: Q,
    pub step: Q,
    pub candidates: usize,
    pub fails_at: Option<Q>,
    pub holds_at: Option<Q>,
    /// s_f + alpha_f of the Kummer polynomial.
    pub expected: Q,
}

impl PjRow {
    fn cells(&self) -> Cells {
        let contains = self.fails_at.as_ref().is_none_or(|a| a <= &self.expected)
            && self.holds_at.as_ref().is_none_or(|b| &self.expected <= b);
        vec![
            ("p", Cell::Int(self.p)),
            ("e", Cell::Int(self.e as u64)),
            ("n", Cell::Int(self.n as u64)),
            ("lo", Cell::Frac(self.lo.clone())),
            ("hi", Cell::Frac(self.hi.clone())),
            ("step", Cell::Frac(self.step.clone())),
            ("candidates", Cell::Int(self.candidates as u64)),
            ("fails_at", Cell::opt_frac(&self.fails_at)),
            ("holds_at", Cell::opt_frac(&self.holds_at)),
            ("expected", Cell::Frac(self.expected.clone())),
            ("contains_expected", Cell::Flag(contains)),
        ]
    }
}

#[derive(Default)]
pub struct BreakRow {
    pub tower: String,
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub u: Option<Q>,
    pub s_f: Option<Q>,
    pub alpha_f: Option<Q>,
    pub different: Option<Q>,
    pub cyclotomic_index: Option<u32>,
    pub kummer_u: Option<Q>,
    pub cyclotomic_u: Option<Q>,
    pub closed_form: Option<Q>,
    pub matches_closed_form: Option<bool>,
    /// u(K, 1, n), printed for the Tate tower.
    pub bound_r1: Option<Q>,
}

impl BreakRow {
    pub fn new(k: &LocalField, n: u32) -> BreakRow {
        BreakRow {
            p: k.p(),
            e: k.e(),
            n,
            ..BreakRow::default()
        }
    }

    fn cells(&self) -> Cells {
        vec![
            ("tower", Cell::Text(self.tower.clone())),
            ("p", Cell::Int(self.p)),
            ("e", Cell::Int(self.e as u64)),
            ("n", Cell::Int(self.n as u64)),
            ("u", Cell::opt_frac(&self.u)),
            ("s_f", Cell::opt_frac(&self.s_f)),
            ("alpha_f", Cell::opt_frac(&self.alpha_f)),
            ("different", Cell::opt_frac(&self.different)),
            (
                "cyclotomic_index",
                self.cyclotomic_index.map(|v| Cell::Int(v as u64)).unwrap_or(Cell::Missing),
            ),
            ("kummer_u", Cell::opt_frac(&self.kummer_u)),
            ("cyclotomic_u", Cell::opt_frac(&self.cyclotomic_u)),
            ("closed_form", Cell::opt_frac(&self.closed_form)),
            (
                "matches_closed_form",
                self.matches_closed_form.map(Cell::Flag).unwrap_or(Cell::Missing),
            ),
            ("bound_r1", Cell::opt_frac(&self.bound_r1)),
        ]
    }
}

pub struct CountRow {
    pub field: String,
    pub count: usize,
}

pub struct SolveReport {
    module: String,
    p: u64,
    e: u32,
    d: usize,
    n: usize,
    r: u32,
    counts: Vec<CountRow>,
    target: usize,
    located: String,
    break_u: Q,
    bound: Q,
    seed_depth: u32,
    seeds_examined: usize,
    lift_precision: u32,
    points: Value,
    orbits: Vec<Vec<usize>>,
    verdict: String,
}

impl SolveReport {
    pub fn new(
        m: &TorsionPhiModule,
        k: &LocalField,
        counts: Vec<CountRow>,
        cut: &CutOut,
        orbits: Vec<Vec<usize>>,
    ) -> SolveReport {
        let points = cut
            .solutions
            .tuples
            .iter()
            .map(|t| serde_json::to_value(t.iter().map(|w| w.to_json()).collect::<Vec<_>>()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Value::Array)
            .unwrap_or(Value::Null);
        SolveReport {
            module: m.name().unwrap_or("module").to_string(),
            p: k.p(),
            e: k.e(),
            d: m.d(),
            n: m.n(),
            r: m.r(),
            counts,
            target: cut.target,
            located: cut.field.name().to_string(),
            break_u: cut.datum.u.clone(),
            bound: cut.bound.value.clone(),
            seed_depth: cut.solutions.seed_depth,
            seeds_examined: cut.solutions.seeds_examined,
            lift_precision: cut.solutions.lift_precision,
            points,
            orbits,
            verdict: cut.verdict.describe().to_string(),
        }
    }

    fn render(&self, format: Format, pretty: bool) -> Result<String> {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                let head: Cells = vec![
                    ("module", Cell::Text(self.module.clone())),
                    ("p", Cell::Int(self.p)),
                    ("e", Cell::Int(self.e as u64)),
                    ("d", Cell::Int(self.d as u64)),
                    ("n", Cell::Int(self.n as u64)),
                    ("r", Cell::Int(self.r as u64)),
                ];
                obj.extend(expand(head, pretty));
                obj.insert(
                    "counts".into(),
                    Value::Array(
                        self.counts
                            .iter()
                            .map(|c| json!({"field": c.field, "count": c.count}))
                            .collect(),
                    ),
                );
                let tail: Cells = vec![
                    ("target", Cell::Int(self.target as u64)),
                    ("located", Cell::Text(self.located.clone())),
                    ("seed_depth", Cell::Int(self.seed_depth as u64)),
                    ("seeds_examined", Cell::Int(self.seeds_examined as u64)),
                    ("lift_precision", Cell::Int(self.lift_precision as u64)),
                ];
                obj.extend(expand(tail, pretty));
                obj.insert("points".into(), self.points.clone());
                obj.insert("galois_orbits".into(), json!(self.orbits));
                let last: Cells = vec![
                    ("break", Cell::Frac(self.break_u.clone())),
                    ("bound", Cell::Frac(self.bound.clone())),
                    ("verdict", Cell::Text(self.verdict.clone())),
                ];
                obj.extend(expand(last, pretty));
                json_text(&Value::Object(obj), pretty)
            }
            Format::Csv => {
                let mut recs: Vec<Vec<String>> = vec![vec!["field".into(), "count".into(), "target".into()]];
                for c in &self.counts {
                    recs.push(vec![c.field.clone(), c.count.to_string(), self.target.to_string()]);
                }
                recs.push(vec!["located".into(), self.located.clone()]);
                for (key, q) in [("break", &self.break_u), ("bound", &self.bound)] {
                    let mut rec = vec![key.to_string(), fmt(q)];
                    if pretty {
                        rec.push(to_f64(q).to_string());
                    }
                    recs.push(rec);
                }
                recs.push(vec!["verdict".into(), self.verdict.clone()]);
                csv_text(&recs)
            }
        }
    }
}

pub enum Output {
    Bound(Vec<BoundRow>),
    Breaks(Vec<BreakRow>),
    Pj(Vec<PjRow>),
    Solve(Box<SolveReport>),
    /// Name and JSON text of each shipped module.
    Modules(Vec<(String, String)>),
    Text(String),
}

impl Output {
    pub fn render(&self, format: Format, pretty: bool) -> Result<String> {
        match self {
            Output::Bound(rows) => render_table(rows.iter().map(BoundRow::cells).collect(), format, pretty),
            Output::Breaks(rows) => render_table(rows.iter().map(BreakRow::cells).collect(), format, pretty),
            Output::Pj(rows) => render_table(rows.iter().map(PjRow::cells).collect(), format, pretty),
            Output::Solve(rep) => rep.render(format, pretty),
            Output::Modules(list) => match format {
                Format::Json => {
                    let arr = list
                        .iter()
                        .map(|(name, text)| {
                            let module: Value = serde_json::from_str(text)
                                .map_err(|e| Error::Input(format!("module {name}: {e}")))?;
                            Ok(json!({"name": name, "module": module}))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    json_text(&Value::Array(arr), pretty)
                }
                Format::Csv => {
                    let mut recs = vec![vec!["name".to_string()]];
                    recs.extend(list.iter().map(|(n, _)| vec![n.clone()]));
                    csv_text(&recs)
                }
            },
            Output::Text(t) => Ok(t.clone()),
        }
    }
}
