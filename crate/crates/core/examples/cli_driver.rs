//! Driving the command-line interface in-process: render a table and run a
//! verification suite, reading the exit status.

use collapsing::cli;

fn main() {
    let table = cli::artifact(["collapsing", "tables", "natural", "--type", "C", "--rank", "4"]).expect("table");
    print!("{}", table.body);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["collapsing", "verify", "charges", "--format", "markdown"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit status {code}");
}
