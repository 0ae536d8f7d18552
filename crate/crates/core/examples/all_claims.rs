use skck::presentations::{verify, Claim, ClaimOptions, Mode};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "sym".into());
    let mode = if arg == "sym" {
        Mode::Symbolic
    } else {
        Mode::Concrete(arg.parse().unwrap())
    };
    for c in Claim::ALL {
        let r = verify(
            c,
            mode,
            ClaimOptions {
                timing: true,
                ..Default::default()
            },
        )
        .unwrap();
        print!("{}", r.to_text());
    }
}
