//! `knc` command-line front end.
//!
//! Every command prints a table (CSV or JSON) to stdout or `--output`.
//! CSV output starts with a `# schema: knc.<name>/<version>` line followed by
//! a header row; JSON output carries the same tag in a `"schema"` field.
//! Integers are printed in full, reals in fixed-point with `--precision`
//! fractional digits.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 size cap exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Integer, Rational};
use serde_json::{Map, Number, Value};

use crate::exactcount::count_table;
use crate::limitlaw::{
    asymptotic_s3, distribution, implied_amplitude, limit_constants, GaussianLaw,
};
use crate::oracle::{Mode, Oracle, DEFAULT_CAP};
use crate::series::{parse_rational, verify_identity};
use crate::{Error, Result};

/// Largest `n` accepted by `count`, `dist` and `asympt`.
pub const COUNT_CAP: usize = 1000;
/// Largest truncation order accepted by `verify-identity`.
pub const ORDER_CAP: usize = 200;
/// Largest `--precision`; reals are computed with 128-bit mantissas.
pub const PRECISION_CAP: usize = 30;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "knc",
    version,
    about = "Exact counts and limit laws for k-noncrossing RNA structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (default: json for `limits`, csv otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Fractional digits for real-valued output
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,

    /// Output file (a directory for `figures`)
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structures counted by number of arcs: n, h, S'(n,h), S(n)
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Exact arc-count distribution next to its Gaussian approximation
    Dist {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Checks the bivariate functional equation coefficient by coefficient
    VerifyIdentity {
        #[arg(long)]
        k: usize,
        /// Exact rational weight, e.g. `3/2`
        #[arg(long, default_value = "1")]
        w: String,
        /// Truncation order N
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Mean and variance densities, growth rate and singular data
    Limits {
        #[arg(long)]
        k: usize,
    },
    /// Exact 3-noncrossing totals against the asymptotic formula
    Asympt {
        #[arg(long, default_value_t = 100)]
        n_min: usize,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
    },
    /// Brute-force enumeration against the exact tables
    OracleCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Writes fig3_clt.csv, fig3_llt.csv and fig4.csv
    Figures {
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(Integer),
    Real(Rational),
    Text(String),
    Empty,
}

impl Cell {
    fn real(x: &Float) -> Cell {
        match x.to_rational() {
            Some(r) => Cell::Real(r),
            None => Cell::Text(x.to_string()),
        }
    }

    fn int(v: impl Into<Integer>) -> Cell {
        Cell::Int(v.into())
    }

    fn render(&self, precision: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(r) => fixed(r, precision),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self, precision: usize) -> Value {
        match self {
            Cell::Int(_) | Cell::Real(_) => Value::Number(
                self.render(precision)
                    .parse::<Number>()
                    .expect("decimal literal is valid JSON"),
            ),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rounds half away from zero to `digits` fractional digits.
pub fn fixed(r: &Rational, digits: usize) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, digits as u32));
    let scaled = Rational::from(r * &scale);
    let half = Rational::from((1, 2));
    let rounded = if scaled < 0 {
        -(-scaled + &half).floor()
    } else {
        (scaled + &half).floor()
    };
    let rounded = rounded.numer().clone();
    let mut digits_str = rounded.clone().abs().to_string();
    if digits_str.len() <= digits {
        digits_str = format!(
            "{}{}",
            "0".repeat(digits + 1 - digits_str.len()),
            digits_str
        );
    }
    let sign = if rounded < 0 { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{digits_str}");
    }
    let (int, frac) = digits_str.split_at(digits_str.len() - digits);
    format!("{sign}{int}.{frac}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub schema: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(schema: &'static str, columns: &[&'static str]) -> Self {
        Table {
            schema,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = format!("# schema: {}\n{}\n", self.schema, self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.render(precision)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, precision: usize) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| c.to_json(precision)).collect()))
            .collect();
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::String(self.schema.into()));
        obj.insert(
            "columns".into(),
            Value::Array(
                self.columns
                    .iter()
                    .map(|c| Value::String((*c).into()))
                    .collect(),
            ),
        );
        obj.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        text.push('\n');
        text
    }
}

/// A single keyed object, used by `limits`.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub schema: &'static str,
    pub fields: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn to_json(&self, precision: usize) -> String {
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::String(self.schema.into()));
        for (key, cell) in &self.fields {
            obj.insert((*key).into(), cell.to_json(precision));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        text.push('\n');
        text
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = format!("# schema: {}\nkey,value\n", self.schema);
        for (key, cell) in &self.fields {
            out.push_str(&format!("{key},{}\n", cell.render(precision)));
        }
        out
    }
}

/// Result of one command: what to print and whether verification passed.
#[derive(Debug)]
pub struct Report {
    pub body: Body,
    pub passed: bool,
}

#[derive(Debug)]
pub enum Body {
    Table(Table),
    Record(Record),
}

impl Report {
    fn pass(body: Body) -> Self {
        Report { body, passed: true }
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match (&self.body, format) {
            (Body::Table(t), Format::Csv) => t.to_csv(precision),
            (Body::Table(t), Format::Json) => t.to_json(precision),
            (Body::Record(r), Format::Csv) => r.to_csv(precision),
            (Body::Record(r), Format::Json) => r.to_json(precision),
        }
    }
}

fn cap(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::CapExceeded {
            what,
            value: value as u64,
            cap: limit as u64,
        });
    }
    Ok(())
}

pub fn cmd_count(k: usize, n: usize) -> Result<Table> {
    cap("n", n, COUNT_CAP)?;
    let table = count_table(k, n)?;
    let mut out = Table::new("knc.count/1", &["n", "h", "structures", "total"]);
    for (h, c) in table.by_arcs().iter().enumerate() {
        out.push(vec![
            Cell::int(n as u64),
            Cell::int(h as u64),
            Cell::Int(c.clone()),
            Cell::Int(table.total().clone()),
        ]);
    }
    Ok(out)
}

pub fn cmd_dist(k: usize, n: usize) -> Result<Table> {
    cap("n", n, COUNT_CAP)?;
    let dist = distribution(n, k)?;
    let c = limit_constants(k)?;
    let law = GaussianLaw::scaled(n, &c.mu, &c.sigma2);
    let mut out = Table::new(
        "knc.dist/1",
        &[
            "h",
            "probability",
            "gaussian_density_at_h",
            "cdf",
            "gaussian_cdf",
        ],
    );
    let mut cdf = Rational::new();
    for (h, p) in dist.probabilities.iter().enumerate() {
        cdf += p;
        out.push(vec![
            Cell::int(h as u64),
            Cell::Real(p.clone()),
            Cell::real(&law.density(h)),
            Cell::Real(cdf.clone()),
            Cell::real(&law.corrected_cdf(h)),
        ]);
    }
    Ok(out)
}

pub fn cmd_verify_identity(k: usize, w: &str, order: usize) -> Result<Report> {
    cap("order", order, ORDER_CAP)?;
    let w = parse_rational(w)?;
    let check = verify_identity(k, &w, order)?;
    let mut out = Table::new(
        "knc.verify-identity/1",
        &["k", "w", "order", "status", "index", "lhs", "rhs"],
    );
    let row = match &check.mismatch {
        None => vec![
            Cell::int(k as u64),
            Cell::Text(w.to_string()),
            Cell::int(order as u64),
            Cell::Text("match".into()),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ],
        Some(m) => vec![
            Cell::int(k as u64),
            Cell::Text(w.to_string()),
            Cell::int(order as u64),
            Cell::Text("mismatch".into()),
            Cell::int(m.index as u64),
            Cell::Text(m.lhs.to_string()),
            Cell::Text(m.rhs.to_string()),
        ],
    };
    out.push(row);
    Ok(Report {
        body: Body::Table(out),
        passed: check.holds(),
    })
}

pub fn cmd_limits(k: usize) -> Result<Record> {
    let c = limit_constants(k)?;
    let mut fields = vec![
        ("k", Cell::int(k as u64)),
        ("mu", Cell::real(&c.mu)),
        ("sigma2", Cell::real(&c.sigma2)),
        ("gamma", Cell::real(&c.gamma)),
        ("rho0", Cell::real(&c.rho0)),
        ("rho_prime", Cell::real(&c.rho_prime)),
        ("rho_second", Cell::real(&c.rho_second)),
        ("unpaired_fraction", Cell::real(&c.unpaired_fraction())),
    ];
    if let Some(e) = c.subexp_exponent {
        fields.push(("subexp_exponent", Cell::int(e)));
    }
    if let Some(a) = &c.amplitude {
        fields.push(("amplitude", Cell::real(a)));
    }
    Ok(Record {
        schema: "knc.limits/1",
        fields,
    })
}

pub fn cmd_asympt(n_min: usize, n_max: usize, step: usize) -> Result<Table> {
    if step == 0 {
        return Err(Error::InvalidInput("step must be positive".into()));
    }
    if n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "n-min {n_min} exceeds n-max {n_max}"
        )));
    }
    cap("n", n_max, COUNT_CAP)?;
    let mut out = Table::new(
        "knc.asympt/1",
        &[
            "n",
            "exact",
            "ln_exact",
            "ln_asymptotic",
            "ratio",
            "implied_amplitude",
        ],
    );
    for n in (n_min..=n_max).step_by(step) {
        let asym = asymptotic_s3(n)?;
        let table = count_table(3, n)?;
        let exact = table.total();
        let ln_exact = Float::with_val(asym.ln_value.prec(), exact).ln();
        let ratio = Float::with_val(asym.ln_value.prec(), &ln_exact - &asym.ln_value).exp();
        out.push(vec![
            Cell::int(n as u64),
            Cell::Int(exact.clone()),
            Cell::real(&ln_exact),
            Cell::real(&asym.ln_value),
            Cell::real(&ratio),
            Cell::real(&implied_amplitude(n, exact)?),
        ]);
    }
    Ok(out)
}

pub fn cmd_oracle_check(k: usize, n_min: usize, n_max: usize) -> Result<Report> {
    if n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "n-min {n_min} exceeds n-max {n_max}"
        )));
    }
    cap("n", n_max, DEFAULT_CAP)?;
    let oracle = Oracle::default();
    let mut out = Table::new(
        "knc.oracle-check/1",
        &["n", "k", "oracle_total", "exact_total", "status"],
    );
    let mut passed = true;
    for n in n_min..=n_max {
        let hist = oracle.histogram(n, k, Mode::Structures)?;
        let table = count_table(k, n)?;
        let ok = hist.len() == table.by_arcs().len()
            && hist.iter().zip(table.by_arcs()).all(|(a, b)| *b == *a);
        passed &= ok;
        out.push(vec![
            Cell::int(n as u64),
            Cell::int(k as u64),
            Cell::int(hist.iter().sum::<u64>()),
            Cell::Int(table.total().clone()),
            Cell::Text(if ok { "match" } else { "mismatch" }.into()),
        ]);
    }
    Ok(Report {
        body: Body::Table(out),
        passed,
    })
}

/// Left panel of the 3-noncrossing figure: distribution and CDF against the
/// Gaussian with mean `μn` and variance `σ²n`.
pub fn figure_clt(n: usize) -> Result<Table> {
    cap("n", n, COUNT_CAP)?;
    let dist = distribution(n, 3)?;
    let c = limit_constants(3)?;
    let law = GaussianLaw::scaled(n, &c.mu, &c.sigma2);
    let mut out = Table::new(
        "knc.fig3-clt/1",
        &[
            "h",
            "x",
            "probability",
            "gaussian_density_at_h",
            "cdf",
            "gaussian_cdf",
        ],
    );
    let mut cdf = Rational::new();
    for (h, p) in dist.probabilities.iter().enumerate() {
        cdf += p;
        out.push(vec![
            Cell::int(h as u64),
            Cell::real(&law.standardize(h as f64)),
            Cell::Real(p.clone()),
            Cell::real(&law.density(h)),
            Cell::Real(cdf.clone()),
            Cell::real(&law.corrected_cdf(h)),
        ]);
    }
    Ok(out)
}

/// Right panel: `sd · P(X = h) - φ(x)` at the standardized points.
pub fn figure_llt(n: usize) -> Result<Table> {
    cap("n", n, COUNT_CAP)?;
    let dist = distribution(n, 3)?;
    let c = limit_constants(3)?;
    let law = GaussianLaw::scaled(n, &c.mu, &c.sigma2);
    let mut out = Table::new(
        "knc.fig3-llt/1",
        &[
            "h",
            "x",
            "scaled_probability",
            "standard_density",
            "difference",
        ],
    );
    for (h, p) in dist.probabilities.iter().enumerate() {
        let scaled = Float::with_val(law.sd.prec(), p) * &law.sd;
        let phi = law.standard_density(h);
        let diff = Float::with_val(law.sd.prec(), &scaled - &phi);
        out.push(vec![
            Cell::int(h as u64),
            Cell::real(&law.standardize(h as f64)),
            Cell::real(&scaled),
            Cell::real(&phi),
            Cell::real(&diff),
        ]);
    }
    Ok(out)
}

/// Both arc-count laws at one length, k = 2 rows first.
pub fn figure_compare(n: usize) -> Result<Table> {
    cap("n", n, COUNT_CAP)?;
    let mut out = Table::new(
        "knc.fig4/1",
        &["k", "h", "probability", "gaussian_density_at_h"],
    );
    for k in [2, 3] {
        let dist = distribution(n, k)?;
        let c = limit_constants(k)?;
        let law = GaussianLaw::scaled(n, &c.mu, &c.sigma2);
        for (h, p) in dist.probabilities.iter().enumerate() {
            out.push(vec![
                Cell::int(k as u64),
                Cell::int(h as u64),
                Cell::Real(p.clone()),
                Cell::real(&law.density(h)),
            ]);
        }
    }
    Ok(out)
}

pub fn cmd_figures(n: usize, dir: &Path, precision: usize) -> Result<Table> {
    let figures = [
        ("fig3_clt.csv", figure_clt(n)?),
        ("fig3_llt.csv", figure_llt(n)?),
        ("fig4.csv", figure_compare(n)?),
    ];
    fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    let mut manifest = Table::new("knc.figures/1", &["file", "schema", "rows"]);
    for (name, table) in figures {
        let path = dir.join(name);
        fs::write(&path, table.to_csv(precision))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        manifest.push(vec![
            Cell::Text(path.display().to_string()),
            Cell::Text(table.schema.into()),
            Cell::int(table.rows.len() as u64),
        ]);
    }
    Ok(manifest)
}

fn execute(cli: &Cli) -> Result<Report> {
    if cli.precision > PRECISION_CAP {
        return Err(Error::InvalidInput(format!(
            "precision {} exceeds {PRECISION_CAP}",
            cli.precision
        )));
    }
    let table = |t: Table| Report::pass(Body::Table(t));
    Ok(match &cli.command {
        Command::Count { k, n } => table(cmd_count(*k, *n)?),
        Command::Dist { k, n } => table(cmd_dist(*k, *n)?),
        Command::VerifyIdentity { k, w, order } => cmd_verify_identity(*k, w, *order)?,
        Command::Limits { k } => Report::pass(Body::Record(cmd_limits(*k)?)),
        Command::Asympt { n_min, n_max, step } => table(cmd_asympt(*n_min, *n_max, *step)?),
        Command::OracleCheck { k, n_min, n_max } => cmd_oracle_check(*k, *n_min, *n_max)?,
        Command::Figures { n } => {
            let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
            table(cmd_figures(*n, &dir, cli.precision)?)
        }
    })
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let default_format = match report.body {
        Body::Record(_) => Format::Json,
        Body::Table(_) => Format::Csv,
    };
    let text = report.render(cli.format.unwrap_or(default_format), cli.precision);
    let written = match (&cli.output, &cli.command) {
        (Some(path), c) if !matches!(c, Command::Figures { .. }) => fs::write(path, text),
        _ => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INVALID;
    }
    if !report.passed {
        let _ = writeln!(stderr, "verification failed");
        return EXIT_MISMATCH;
    }
    EXIT_PASS
}

pub fn run_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
