//! Command-line front-end for the bidirectional combinators: the text
//! codec, the tree/key-value lens demos, BST sampling and checking, and the
//! full law/property suites.
//!
//! Exit codes: 0 success, 1 domain failure (parse/lens/check failed),
//! 2 malformed input syntax (also used by clap for bad flags).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bidir::bigen::{bst, check_bst, Rng};
use bidir::biparser::string_bp;
use bidir::lens::{at_keys, parse_kv_map, render_kv_map, spine_l, KvMap};
use bidir::suites::run_all;
use bidir::tree::{parse_tree, print_tree};

#[derive(Parser)]
#[command(name = "bidir", about = "Bidirectional codec, lens and generator demos")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the wire encoding of a payload.
    Encode { payload: String },
    /// Decode a wire encoding; prints the payload, then the remainder.
    Decode { input: String },
    /// Print the right spine of a tree as space-separated labels.
    SpineGet { tree: String },
    /// Write a new right spine into a tree; prints the updated tree.
    SpinePut {
        tree: String,
        /// New spine labels, in order.
        labels: Vec<i64>,
    },
    /// Look keys up in a key-value file; prints one value per line.
    KvGet {
        file: PathBuf,
        keys: Vec<String>,
    },
    /// Store values under keys in a key-value file; prints the stored
    /// values. A missing file is treated as an empty map.
    KvPut {
        file: PathBuf,
        /// Key to write; repeat once per key.
        #[arg(long = "key")]
        keys: Vec<String>,
        /// Value to write; repeat once per value, in key order.
        #[arg(long = "value")]
        values: Vec<String>,
    },
    /// Sample binary search trees over [lo, hi], one per line.
    BstSample {
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 20)]
        hi: i64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Check whether a tree is a binary search tree over [lo, hi].
    BstCheck {
        #[arg(long, default_value_t = 0)]
        lo: i64,
        #[arg(long, default_value_t = 20)]
        hi: i64,
        tree: String,
    },
    /// Run every registered law and round-tripping suite.
    Laws {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
    },
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_MALFORMED: u8 = 2;

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn cmd_encode(payload: &str) -> ExitCode {
    // Printing is total on any payload.
    let (_, s) = string_bp().print(&payload.to_string()).expect("string printing is total");
    println!("{s}");
    ExitCode::SUCCESS
}

fn cmd_decode(input: &str) -> ExitCode {
    match string_bp().parse(input) {
        Some((payload, rest)) => {
            println!("{payload}");
            println!("{rest}");
            ExitCode::SUCCESS
        }
        None => fail(EXIT_DOMAIN, "input is not a valid wire encoding"),
    }
}

fn cmd_spine_get(tree: &str) -> ExitCode {
    let t = match parse_tree(tree) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_MALFORMED, &e.to_string()),
    };
    match spine_l().get(&t) {
        Some(spine) => {
            let words: Vec<String> = spine.iter().map(i64::to_string).collect();
            println!("{}", words.join(" "));
            ExitCode::SUCCESS
        }
        None => fail(EXIT_DOMAIN, "spine lookup failed"),
    }
}

fn cmd_spine_put(tree: &str, labels: &[i64]) -> ExitCode {
    let t = match parse_tree(tree) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_MALFORMED, &e.to_string()),
    };
    match spine_l().put(&labels.to_vec(), &t) {
        Some(((_, t2), _)) => {
            println!("{}", print_tree(&t2));
            ExitCode::SUCCESS
        }
        None => fail(EXIT_DOMAIN, "spine update failed"),
    }
}

fn read_kv_file(path: &PathBuf, missing_is_empty: bool) -> Result<KvMap, ExitCode> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_kv_map(&text)
            .map_err(|e| fail(EXIT_MALFORMED, &e.to_string())),
        Err(_) if missing_is_empty => Ok(KvMap::new()),
        Err(e) => Err(fail(EXIT_MALFORMED, &format!("cannot read {}: {e}", path.display()))),
    }
}

fn cmd_kv_get(file: &PathBuf, keys: &[String]) -> ExitCode {
    let m = match read_kv_file(file, true) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match at_keys(keys).get(&m) {
        Some(values) => {
            for v in values {
                println!("{v}");
            }
            ExitCode::SUCCESS
        }
        None => fail(EXIT_DOMAIN, "missing key"),
    }
}

fn cmd_kv_put(file: &PathBuf, keys: &[String], values: &[String]) -> ExitCode {
    let m = match read_kv_file(file, true) {
        Ok(m) => m,
        Err(code) => return code,
    };
    match at_keys(keys).put(&values.to_vec(), &m) {
        Some(((views, m2), _)) => {
            let text = match render_kv_map(&m2) {
                Ok(text) => text,
                Err(e) => return fail(EXIT_MALFORMED, &e.to_string()),
            };
            if let Err(e) = std::fs::write(file, text) {
                return fail(EXIT_DOMAIN, &format!("cannot write {}: {e}", file.display()));
            }
            for v in views {
                println!("{v}");
            }
            ExitCode::SUCCESS
        }
        None => fail(EXIT_DOMAIN, "fewer values than keys"),
    }
}

fn cmd_bst_sample(lo: i64, hi: i64, count: u64, seed: u64) -> ExitCode {
    let g = bst(lo, hi);
    let mut rng = Rng::new(seed);
    for _ in 0..count {
        let (t, rng2) = g.generate(rng);
        rng = rng2;
        println!("{}", print_tree(&t));
    }
    ExitCode::SUCCESS
}

fn cmd_bst_check(lo: i64, hi: i64, tree: &str) -> ExitCode {
    let t = match parse_tree(tree) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_MALFORMED, &e.to_string()),
    };
    if check_bst(lo, hi, &t) {
        println!("true");
        ExitCode::SUCCESS
    } else {
        println!("false");
        ExitCode::from(EXIT_DOMAIN)
    }
}

fn cmd_laws(seed: u64, cases: u64) -> ExitCode {
    let results = run_all(seed, cases);
    let mut all_passed = true;
    for r in &results {
        println!("{}", r.render());
        all_passed &= r.passed;
    }
    if all_passed {
        println!("all {} suites passed", results.len());
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_DOMAIN)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Encode { payload } => cmd_encode(&payload),
        Command::Decode { input } => cmd_decode(&input),
        Command::SpineGet { tree } => cmd_spine_get(&tree),
        Command::SpinePut { tree, labels } => cmd_spine_put(&tree, &labels),
        Command::KvGet { file, keys } => cmd_kv_get(&file, &keys),
        Command::KvPut { file, keys, values } => cmd_kv_put(&file, &keys, &values),
        Command::BstSample { lo, hi, count, seed } => cmd_bst_sample(lo, hi, count, seed),
        Command::BstCheck { lo, hi, tree } => cmd_bst_check(lo, hi, &tree),
        Command::Laws { seed, cases } => cmd_laws(seed, cases),
    }
}
