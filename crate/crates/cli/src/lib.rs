//! The `permgrowth` command line, as a library so it can be driven in tests.
//!
//! Exit codes: 0 on success, 1 on bad input, 2 when a resource limit stops
//! the computation.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permgrowth::constructor::{construct_word_with, ConstructorOptions};
use permgrowth::descent::{brute_force_descent_limited, count_descent, descent_series};
use permgrowth::numerics::{nth_root_float, parse_ratio, Count, Ratio};
use permgrowth::peakgrowth::{
    find_periodic_word_limited, growth_rate_periodic, limit_growth_rate_periodic,
    PeriodicPeakFamily,
};
use permgrowth::peaks::{
    brute_force_peak_limited, count_peak_closed, count_peak_ie_limited, count_peak_periodic,
    count_peak_split, count_peak_transfer, periodic_peak_set,
};
use permgrowth::words::{parse_word_spec, word_to_set};
use permgrowth::{Error, PositionSet, WordSpec};

mod selftest;

#[derive(Parser)]
#[command(
    name = "permgrowth",
    version,
    about = "Count permutations by descent word and peak set, and build words with prescribed growth rates"
)]
struct Cli {
    /// Report elapsed time (stderr for text, a trailing comment for CSV, a
    /// metadata field for JSON).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Descent-word counts and the adaptive word builder.
    Descent {
        #[command(subcommand)]
        cmd: DescentCmd,
    },
    /// Peak-set counts and periodic peak growth rates.
    Peak {
        #[command(subcommand)]
        cmd: PeakCmd,
    },
    /// Brute-force counts by enumerating all permutations.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Check the library's invariants at desk scale.
    Selftest {
        /// Run the larger, slower versions of every check.
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Subcommand)]
enum DescentCmd {
    /// d_n of a word spec such as "[01]" or "1000101".
    Count {
        #[arg(long, value_parser = spec_arg)]
        word: WordSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ScalarFormat::Text)]
        format: ScalarFormat,
    },
    /// d_1 .. d_N together with (d_n/n!)^(1/n).
    Series {
        #[arg(long, value_parser = spec_arg)]
        word: WordSpec,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Refuse --max-n above this.
        #[arg(long, default_value_t = 20_000)]
        n_limit: usize,
    },
    /// Run the adaptive 0/10 builder toward growth rate P/Q.
    Construct {
        /// Target growth rate as an exact fraction P/Q in [0, 2/π].
        #[arg(long, value_parser = ratio_arg)]
        target: Ratio,
        /// Upper target P'/Q' for the two-target variant.
        #[arg(long, value_parser = ratio_arg)]
        upper: Option<Ratio>,
        #[arg(long)]
        max_n: usize,
        /// Include the constructed word in the output.
        #[arg(long)]
        emit_word: bool,
        #[arg(long, value_enum, default_value_t = RunFormat::Json)]
        format: RunFormat,
        /// Refuse --max-n above this.
        #[arg(long, default_value_t = 20_000)]
        n_limit: usize,
        /// Give up searching for the envelope constant K beyond this.
        #[arg(long, default_value_t = 3000)]
        k_search_limit: u64,
    },
}

#[derive(Subcommand)]
enum PeakCmd {
    /// p_n of a peak set.
    Count {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Ie)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ScalarFormat::Text)]
        format: ScalarFormat,
        /// Cap on supersets visited by inclusion-exclusion.
        #[arg(long, default_value_t = permgrowth::peaks::SUPERSET_LIMIT)]
        superset_limit: usize,
        /// Largest n the brute-force method will enumerate.
        #[arg(long, default_value_t = permgrowth::descent::BRUTE_FORCE_LIMIT)]
        brute_limit: usize,
    },
    /// p_1 .. p_N for the peak word (01(001)^a 0^b)^ω.
    Series {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Refuse --max-n above this.
        #[arg(long, default_value_t = 5000)]
        n_limit: usize,
    },
    /// Closed-form growth rate of (01(001)^a 0^b)^ω.
    Growth {
        #[command(flatten)]
        family: FamilyArgs,
        /// Print the limit including the per-period (b+1)(b+4) factor
        /// instead of the customary closed form.
        #[arg(long)]
        limit: bool,
        #[arg(long, value_enum, default_value_t = ScalarFormat::Text)]
        format: ScalarFormat,
    },
    /// Search for a periodic peak word with growth rate near L.
    Find {
        #[arg(long)]
        target: f64,
        #[arg(long)]
        epsilon: f64,
        /// Give up after this many values of m.
        #[arg(long, default_value_t = permgrowth::peakgrowth::SEARCH_LIMIT)]
        max_m: u64,
        #[arg(long, value_enum, default_value_t = RunFormat::Json)]
        format: RunFormat,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Brute-force d_n of a word.
    Descent {
        #[arg(long, value_parser = spec_arg)]
        word: WordSpec,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = permgrowth::descent::BRUTE_FORCE_LIMIT)]
        brute_limit: usize,
    },
    /// Brute-force p_n of a peak set.
    Peak {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = permgrowth::descent::BRUTE_FORCE_LIMIT)]
        brute_limit: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetArgs {
    /// Peak positions, comma separated: "2,5,9".
    #[arg(long, value_parser = set_arg)]
    set: Option<PositionSet>,
    /// Peak word spec; its 1s up to position n-1 form the set.
    #[arg(long = "peak-word", value_parser = spec_arg)]
    peak_word: Option<WordSpec>,
}

impl SetArgs {
    fn resolve(&self, n: usize) -> PositionSet {
        match (&self.set, &self.peak_word) {
            (Some(s), _) => s.clone(),
            (None, Some(w)) => word_to_set(&w.word_prefix(n.saturating_sub(1))),
            (None, None) => unreachable!("clap requires one of --set, --peak-word"),
        }
    }
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
}

impl FamilyArgs {
    fn family(&self) -> Result<PeriodicPeakFamily, Error> {
        PeriodicPeakFamily::new(self.a, self.b)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Ie,
    Split,
    Closed,
    Brute,
    Transfer,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Ie => "ie",
            Method::Split => "split",
            Method::Closed => "closed",
            Method::Brute => "brute",
            Method::Transfer => "transfer",
        }
    }
}

fn spec_arg(s: &str) -> Result<WordSpec, String> {
    parse_word_spec(s).map_err(|e| e.to_string())
}

fn ratio_arg(s: &str) -> Result<Ratio, String> {
    parse_ratio(s).map_err(|e| format!("{e} (expected an exact fraction such as 2/5)"))
}

fn set_arg(s: &str) -> Result<PositionSet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced, before timing is attached.
enum Output {
    Text(String),
    Csv(String),
    Json(Value),
}

fn envelope(command: &str, input: Value, result: Value) -> Output {
    Output::Json(json!({
        "schema": 1,
        "command": command,
        "input": input,
        "result": result,
    }))
}

fn check_limit(name: &str, value: usize, limit: usize, flag: &str) -> Result<(), Error> {
    if value > limit {
        return Err(Error::ResourceLimit(format!(
            "{name} = {value} is above the limit {limit}; raise it with {flag}"
        )));
    }
    Ok(())
}

fn positive(name: &str, n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidInput(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn series_output(
    command: &str,
    input: Value,
    rows: impl Iterator<Item = (usize, Count, f64)>,
    format: TableFormat,
) -> Output {
    match format {
        TableFormat::Csv => {
            let mut text = String::from("n,count,growth_point\n");
            for (n, c, g) in rows {
                text.push_str(&format!("{n},{c},{g}\n"));
            }
            Output::Csv(text)
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .map(|(n, c, g)| json!({"n": n, "count": c.to_string(), "growth_point": g}))
                .collect();
            envelope(command, input, json!({ "rows": rows }))
        }
    }
}

fn count_output(command: &str, input: Value, count: &Count, format: ScalarFormat) -> Output {
    match format {
        ScalarFormat::Text => Output::Text(format!("{count}\n")),
        ScalarFormat::Json => envelope(command, input, json!({ "count": count.to_string() })),
    }
}

fn descent(cmd: DescentCmd) -> Result<Output, Error> {
    match cmd {
        DescentCmd::Count { word, n, format } => {
            let count = count_descent(&word, n)?;
            let input = json!({"word": word.to_string(), "n": n});
            Ok(count_output("descent count", input, &count, format))
        }
        DescentCmd::Series {
            word,
            max_n,
            format,
            n_limit,
        } => {
            check_limit("--max-n", max_n, n_limit, "--n-limit")?;
            let series = descent_series(&word, max_n)?;
            let input = json!({"word": word.to_string(), "max_n": max_n});
            let rows = series.rows().map(|(n, c, g)| (n, c.clone(), g));
            Ok(series_output("descent series", input, rows, format))
        }
        DescentCmd::Construct {
            target,
            upper,
            max_n,
            emit_word,
            format,
            n_limit,
            k_search_limit,
        } => {
            check_limit("--max-n", max_n, n_limit, "--n-limit")?;
            let upper = upper.unwrap_or_else(|| target.clone());
            let opts = ConstructorOptions {
                k_search_limit,
                ..ConstructorOptions::default()
            };
            let run = construct_word_with(&target, &upper, max_n, &opts)?;
            match format {
                RunFormat::Json => {
                    let mut result = serde_json::to_value(&run).expect("serializable run");
                    if !emit_word {
                        result.as_object_mut().expect("object").remove("word");
                    }
                    let input = json!({
                        "target": target.to_string(),
                        "upper": upper.to_string(),
                        "max_n": max_n,
                    });
                    Ok(envelope("descent construct", input, result))
                }
                RunFormat::Text => {
                    let mut text = format!("target {}\n", run.target_low);
                    if run.target_high != run.target_low {
                        text.push_str(&format!("upper {}\n", run.target_high));
                    }
                    let k = run.k_constant.map_or("-".to_string(), |k| k.to_string());
                    let flips: Vec<String> = run.flips.iter().map(|f| f.to_string()).collect();
                    text.push_str(&format!("K {k}\n"));
                    text.push_str(&format!("flips {}\n", flips.join(",")));
                    if let Some(last) = run.r_log.last() {
                        text.push_str(&format!("growth_at_n {} {}\n", last.n, last.growth));
                    }
                    if emit_word {
                        text.push_str(&format!("word {}\n", run.word));
                    }
                    Ok(Output::Text(text))
                }
            }
        }
    }
}

fn peak(cmd: PeakCmd) -> Result<Output, Error> {
    match cmd {
        PeakCmd::Count {
            set,
            n,
            method,
            format,
            superset_limit,
            brute_limit,
        } => {
            positive("--n", n)?;
            let s = set.resolve(n);
            let input = json!({"set": s.to_string(), "n": n, "method": method.name()});
            let count = match method {
                Method::Ie => count_peak_ie_limited(&s, n, superset_limit)?,
                Method::Split => count_peak_split(&s, n)?,
                Method::Transfer => count_peak_transfer(&s, n)?,
                Method::Brute => brute_force_peak_limited(&s, n, brute_limit)?,
                Method::Closed => match count_peak_closed(&s, n)? {
                    Some(c) => c,
                    None => {
                        return Ok(match format {
                            ScalarFormat::Text => Output::Text("not applicable\n".into()),
                            ScalarFormat::Json => envelope(
                                "peak count",
                                input,
                                json!({"count": null, "applicable": false}),
                            ),
                        })
                    }
                },
            };
            Ok(count_output("peak count", input, &count, format))
        }
        PeakCmd::Series {
            family,
            max_n,
            format,
            n_limit,
        } => {
            let fam = family.family()?;
            positive("--max-n", max_n)?;
            check_limit("--max-n", max_n, n_limit, "--n-limit")?;
            let (a, b) = (fam.a as usize, fam.b as usize);
            let mut rows = Vec::with_capacity(max_n);
            let mut fact = Count::from(1u8);
            for n in 1..=max_n {
                fact *= n;
                let count = if n > 3 * a {
                    count_peak_periodic(a, b, n)?
                } else {
                    count_peak_transfer(&periodic_peak_set(a, b, n), n)?
                };
                let g = nth_root_float(&count, &fact, n as u64);
                rows.push((n, count, g));
            }
            let input =
                json!({"a": fam.a, "b": fam.b, "max_n": max_n, "word": fam.word().to_string()});
            Ok(series_output(
                "peak series",
                input,
                rows.into_iter(),
                format,
            ))
        }
        PeakCmd::Growth {
            family,
            limit,
            format,
        } => {
            let fam = family.family()?;
            let closed = growth_rate_periodic(fam);
            let exact = limit_growth_rate_periodic(fam);
            Ok(match format {
                ScalarFormat::Text => {
                    Output::Text(format!("{}\n", if limit { exact } else { closed }))
                }
                ScalarFormat::Json => envelope(
                    "peak growth",
                    json!({"a": fam.a, "b": fam.b}),
                    json!({"rate": closed, "limit_rate": exact, "word": fam.word().to_string()}),
                ),
            })
        }
        PeakCmd::Find {
            target,
            epsilon,
            max_m,
            format,
        } => {
            let found = find_periodic_word_limited(target, epsilon, max_m)?;
            Ok(match format {
                RunFormat::Json => envelope(
                    "peak find",
                    json!({"L": target, "epsilon": epsilon}),
                    serde_json::to_value(&found).expect("serializable search"),
                ),
                RunFormat::Text => {
                    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
                    Output::Text(format!(
                        "m {}\na {}\nb {}\nrate {}\nlimit_rate {}\nword {}\n",
                        opt(found.m),
                        opt(found.a),
                        opt(found.b),
                        found.achieved_rate,
                        found.limit_rate,
                        found.word
                    ))
                }
            })
        }
    }
}

fn oracle(cmd: OracleCmd) -> Result<Output, Error> {
    match cmd {
        OracleCmd::Descent {
            word,
            n,
            brute_limit,
        } => {
            positive("--n", n)?;
            let count = brute_force_descent_limited(&word.word_prefix(n - 1), n, brute_limit)?;
            Ok(Output::Text(format!("{count}\n")))
        }
        OracleCmd::Peak {
            set,
            n,
            brute_limit,
        } => {
            positive("--n", n)?;
            let count = brute_force_peak_limited(&set.resolve(n), n, brute_limit)?;
            Ok(Output::Text(format!("{count}\n")))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 2,
        Error::Parse { .. } | Error::InvalidInput(_) => 1,
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };

    let start = Instant::now();
    let result = match cli.command {
        Command::Descent { cmd } => descent(cmd),
        Command::Peak { cmd } => peak(cmd),
        Command::Oracle { cmd } => oracle(cmd),
        Command::Selftest { deep } => {
            let report = selftest::run(deep);
            let _ = write!(out, "{}", report.text);
            if cli.timing {
                let _ = writeln!(err, "elapsed_ms {}", start.elapsed().as_millis());
            }
            return if report.passed { 0 } else { 1 };
        }
    };
    let elapsed_ms = start.elapsed().as_millis();

    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match output {
        Output::Text(text) => {
            if cli.timing {
                let _ = writeln!(err, "elapsed_ms {elapsed_ms}");
            }
            write!(out, "{text}")
        }
        Output::Csv(mut text) => {
            if cli.timing {
                text.push_str(&format!("# elapsed_ms {elapsed_ms}\n"));
            }
            write!(out, "{text}")
        }
        Output::Json(mut value) => {
            if cli.timing {
                value["timing_ms"] = json!(elapsed_ms as u64);
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&value).expect("valid json")
            )
        }
    };
    if written.is_err() {
        return 1;
    }
    0
}
