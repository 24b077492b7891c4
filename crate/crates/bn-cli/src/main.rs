fn main() {
    let env_cap = std::env::var(bn_cli::cli::ENV_CAP).ok();
    let (out, err, code) = bn_cli::cli::main_with(std::env::args_os(), env_cap);
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
