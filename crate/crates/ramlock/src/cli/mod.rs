//! Command-line front end: bound tables, break reports, and point counts for module files.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::localfield::arith::max_digits;
use crate::localfield::construct::{adjoin_pth_root, adjoin_zeta_p};
use crate::localfield::towers::{cyclotomic_tower, fn_tower, kummer_tower, tate_tower};
use crate::localfield::{field_from_json, standard_field, LFElement, LocalField};
use crate::phimodule::{
    automorphisms, bundled_module, bundled_names, curated_candidates, cut_out_extension,
    galois_action, orbits, SolveOptions, TorsionPhiModule,
};
use crate::ramification::breaks::{cyclotomic_index, kummer_poly};
use crate::ramification::pj::{bracket_pj, budget_from_env};
use crate::ramification::{
    bound_value, break_cyclotomic, break_fn, break_tate, different_valuation,
    root_difference_profile,
};
use crate::phimodule::bundled::BUNDLED;
use crate::witt::{AbarRing, WittContext};
use crate::rat::{self, Q};
use report::{BoundRow, BreakRow, CountRow, Format, Output, PjRow, SolveReport};

#[derive(Parser, Debug)]
#[command(name = "ramlock", version, about = "Ramification bounds for torsion crystalline representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Add decimal approximations next to the exact fractions.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Absolute ramification index of K = Q_p(p^(1/e)).
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// JSON presentation of K; overrides --p and --e.
    #[arg(long)]
    field: Option<PathBuf>,
    /// Working precision in digits.
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TowerKind {
    #[value(name = "Fn", alias = "fn")]
    Fn,
    Kummer,
    Cyclotomic,
    Tate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of u(K, r, n); omitted r or n range over a grid.
    Bound {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Largest n in the grid when --n is omitted.
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
    /// Upper breaks of the Kummer, cyclotomic and composite towers over K.
    Breaks {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum)]
        tower: Option<TowerKind>,
        /// Also build the cyclotomic or composite tower and compute its different.
        #[arg(long)]
        different: bool,
    },
    /// Bracket the least j where (P_j) holds for the Kummer step K_n / K over candidate fields.
    ///
    /// A failing level is certified by one of the candidates. A holding level only says that
    /// no candidate fails there, so the upper end is as good as the candidate list.
    Pj {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "0", value_parser = parse_rational)]
        lo: Q,
        #[arg(long, default_value = "3", value_parser = parse_rational)]
        hi: Q,
        /// Grid spacing, as a fraction.
        #[arg(long, default_value = "1/6", value_parser = parse_rational)]
        step: Q,
        /// Extra candidate field presentation (JSON); repeatable.
        #[arg(long)]
        candidate: Vec<PathBuf>,
        /// Enumeration budget per level; defaults to RAMLOCK_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Count points of a module over the curated candidate fields and compare the break.
    Solve {
        #[command(flatten)]
        field: FieldArgs,
        /// Module description in JSON.
        #[arg(long, conflicts_with = "bundled")]
        module: Option<PathBuf>,
        /// Name of a shipped example module.
        #[arg(long)]
        bundled: Option<String>,
        /// Seed budget; defaults to RAMLOCK_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List the shipped example modules.
    Modules,
    /// Print the universal Witt sum and product polynomials.
    WittPolys {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    rat::parse(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

impl FieldArgs {
    fn prime_and_index(&self) -> Result<(u64, u32)> {
        if let Some(path) = &self.field {
            let k = field_from_json(&read_file(path)?)?;
            return Ok((k.p(), k.e()));
        }
        if !is_prime(self.p) {
            return Err(Error::Input(format!("{} is not a prime", self.p)));
        }
        if self.e == 0 {
            return Err(Error::Input("e must be positive".into()));
        }
        Ok((self.p, self.e))
    }

    fn build(&self, default_precision: u32) -> Result<LocalField> {
        if self.precision == Some(0) {
            return Err(Error::Input("precision must be positive".into()));
        }
        if let Some(path) = &self.field {
            return field_from_json(&read_file(path)?);
        }
        let (p, e) = self.prime_and_index()?;
        standard_field(p, e, self.precision.unwrap_or(default_precision))
    }
}

fn cmd_bound(field: &FieldArgs, r: Option<u32>, n: Option<u32>, max_n: u32) -> Result<Vec<BoundRow>> {
    let (p, e) = field.prime_and_index()?;
    if let Some(r) = r {
        if r as u64 + 1 >= p {
            return Err(Error::RangeError(format!("r = {r} must be below p - 1 = {}", p - 1)));
        }
    }
    if n == Some(0) || max_n == 0 {
        return Err(Error::RangeError("level n must be at least 1".into()));
    }
    let rs: Vec<u32> = match r {
        Some(r) => vec![r],
        None => (0..(p - 1) as u32).collect(),
    };
    let ns: Vec<u32> = match n {
        Some(n) => vec![n],
        None => (1..=max_n).collect(),
    };
    let mut rows = Vec::new();
    for &r in &rs {
        for &n in &ns {
            rows.push(BoundRow::new(p, e, r, n, bound_value(p, e, r, n)?));
        }
    }
    Ok(rows)
}

fn cmd_breaks(field: &FieldArgs, n: u32, tower: Option<TowerKind>, different: bool) -> Result<Vec<BreakRow>> {
    if n == 0 {
        return Err(Error::RangeError("level n must be at least 1".into()));
    }
    let k = field.build(20)?;
    let kinds = match tower {
        Some(t) => vec![t],
        None => vec![TowerKind::Kummer, TowerKind::Cyclotomic, TowerKind::Fn, TowerKind::Tate],
    };
    let mut rows = Vec::new();
    for kind in kinds {
        let mut row = BreakRow::new(&k, n);
        match kind {
            TowerKind::Kummer => {
                let prof = root_difference_profile(&kummer_poly(&k, n), &k)?;
                row.tower = "kummer".into();
                row.u = Some(&prof.s_f + &prof.alpha_f);
                row.different = prof.monogenic.then(|| prof.s_f.clone());
                row.s_f = Some(prof.s_f);
                row.alpha_f = Some(prof.alpha_f);
            }
            TowerKind::Cyclotomic => {
                row.tower = "cyclotomic".into();
                row.u = Some(break_cyclotomic(&k, n)?);
                row.cyclotomic_index = Some(cyclotomic_index(&k)?);
                if different {
                    let cyc = cyclotomic_tower(&k, n + 1)?;
                    row.different = Some(different_valuation(&cyc.field, &k)?);
                }
            }
            TowerKind::Fn | TowerKind::Tate => {
                let (name, comp) = if kind == TowerKind::Fn {
                    ("Fn", break_fn(&k, n)?)
                } else {
                    ("tate", break_tate(&k, n)?)
                };
                row.tower = name.into();
                row.matches_closed_form = Some(comp.matches());
                row.kummer_u = Some(comp.kummer.u.clone());
                row.cyclotomic_u = Some(comp.cyclotomic_bound.clone());
                row.closed_form = Some(comp.closed_form.clone());
                row.u = Some(comp.computed);
                if kind == TowerKind::Tate {
                    row.bound_r1 = Some(bound_value(k.p(), k.e(), 1, n)?);
                }
                if different {
                    let top = if kind == TowerKind::Fn { fn_tower(&k, n)? } else { tate_tower(&k, n)? };
                    row.different = Some(different_valuation(&top.field, &k)?);
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Q_3(zeta_3)(y) with y^3 = 3(1 + 3 sqrt(-3)): it receives O_{K_1} modulo a high ideal
/// without containing a cube root of 3.
fn near_cube_root_of_three(k: &LocalField) -> Result<LocalField> {
    let z = adjoin_zeta_p(k)?;
    let one = LFElement::one(&z.field);
    let sqrt_m3 = z.root.mul_int(2).add(&one);
    let w = LFElement::from_int(&z.field, 3).mul(&one.add(&sqrt_m3.mul_int(3)));
    Ok(adjoin_pth_root(&z.field, &w, "W")?.field)
}

fn cmd_pj(field: &FieldArgs, n: u32, lo: &Q, hi: &Q, step: &Q, extra: &[PathBuf], budget: Option<u64>) -> Result<PjRow> {
    if n == 0 {
        return Err(Error::RangeError("level n must be at least 1".into()));
    }
    if !rat::is_nonneg(lo) || hi < lo || !(step > &Q::from_integer(0.into())) {
        return Err(Error::Input("need 0 <= lo <= hi and step > 0".into()));
    }
    let budget = budget.unwrap_or_else(budget_from_env);
    if budget == 0 {
        return Err(Error::Input("budget must be positive".into()));
    }
    let (p, _) = field.prime_and_index()?;
    let k = field.build(max_digits(p).min(30))?;
    let f = kummer_poly(&k, n);
    let mut cands = vec![k.clone(), kummer_tower(&k, n)?.field];
    if k.p() == 3 && k.e() == 1 && k.degree() == 1 && n == 1 {
        cands.push(near_cube_root_of_three(&k)?);
    }
    for path in extra {
        cands.push(field_from_json(&read_file(path)?)?);
    }
    let prof = root_difference_profile(&f, &k)?;
    let br = bracket_pj(&f, &cands, lo, hi, step, budget)?;
    Ok(PjRow {
        p: k.p(),
        e: k.e(),
        n,
        lo: lo.clone(),
        hi: hi.clone(),
        step: step.clone(),
        candidates: cands.len(),
        fails_at: br.fails_at,
        holds_at: br.holds_at,
        expected: &prof.s_f + &prof.alpha_f,
    })
}

fn load_module(module: &Option<PathBuf>, bundled: &Option<String>, e: u32) -> Result<TorsionPhiModule> {
    match (module, bundled) {
        (Some(path), None) => TorsionPhiModule::parse_json(&read_file(path)?, e),
        (None, Some(name)) => Ok(bundled_module(name, e)?.with_name(name)),
        _ => Err(Error::Input("give --module FILE or --bundled NAME".into())),
    }
}

fn cmd_solve(
    field: &FieldArgs,
    module: &Option<PathBuf>,
    bundled: &Option<String>,
    budget: Option<u64>,
) -> Result<SolveReport> {
    let (p, e) = field.prime_and_index()?;
    let m = load_module(module, bundled, e)?;
    m.check_for_prime(p)?;
    let budget = budget.unwrap_or_else(budget_from_env);
    if budget == 0 {
        return Err(Error::Input("budget must be positive".into()));
    }
    let k = field.build(8)?;
    let n = m.n() as u32;
    let (tower, candidates) = curated_candidates(&k, n)?;
    let opts = SolveOptions { budget, ..SolveOptions::default() };
    let cut = cut_out_extension(&m, &tower, &candidates, &opts)?;
    let ring = AbarRing::from_tower(&tower, &cut.field, m.r())?;
    let auts = automorphisms(&cut.field, &tower.field)?;
    let perms = auts
        .iter()
        .map(|s| galois_action(&m, &ring, &cut.solutions, s))
        .collect::<Result<Vec<_>>>()?;
    let orbs = orbits(cut.solutions.count(), &perms);
    let counts = candidates
        .iter()
        .zip(&cut.counts)
        .map(|(f, &c)| CountRow { field: f.name().to_string(), count: c })
        .collect();
    Ok(SolveReport::new(&m, &k, counts, &cut, orbs))
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Bound { field, r, n, max_n } => Output::Bound(cmd_bound(field, *r, *n, *max_n)?),
        Command::Breaks { field, n, tower, different } => {
            Output::Breaks(cmd_breaks(field, *n, *tower, *different)?)
        }
        Command::Pj { field, n, lo, hi, step, candidate, budget } => {
            Output::Pj(vec![cmd_pj(field, *n, lo, hi, step, candidate, *budget)?])
        }
        Command::Solve { field, module, bundled, budget } => {
            Output::Solve(Box::new(cmd_solve(field, module, bundled, *budget)?))
        }
        Command::Modules => Output::Modules(
            bundled_names()
                .into_iter()
                .zip(BUNDLED.iter().map(|(_, text)| text.trim().to_string()))
                .map(|(n, t)| (n.to_string(), t))
                .collect(),
        ),
        Command::WittPolys { p, n } => {
            if !is_prime(*p) {
                return Err(Error::Input(format!("{p} is not a prime")));
            }
            Output::Text(WittContext::new(*p, *n)?.dump())
        }
    })
}

fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        2
    } else {
        1
    }
}

/// Parse arguments, run the command, print the report and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::BudgetExceeded { partial } = err {
                eprintln!("partial count: {partial}");
            }
            return exit_code(&err);
        }
    };
    let text = match out.render(cli.format, cli.pretty) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write report: {err}");
        return 1;
    }
    0
}
