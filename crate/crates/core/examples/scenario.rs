use torees::scenario::{parse_scenario, run_scenario, RunOptions};

const TEXT: &str = "\
name demo
ring V = veronese 2 2
divisor P = prime V : X1^2, X1*X2
task class-group V
task symbolic-power V P 2
task cm-check V P degree 6
";

fn main() {
    let scenario = parse_scenario(TEXT).unwrap();
    let report = run_scenario(&scenario, &RunOptions::default());
    println!("{}", report.to_json(false));
}
