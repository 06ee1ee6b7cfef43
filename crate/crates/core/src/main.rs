use clap::Parser;

use jordan_chevalley::cli::{run, RunConfig};

fn main() {
    std::process::exit(run(RunConfig::parse()));
}
