fn main() {
    let env_cap = std::env::var("PG_CAP").ok();
    let code = pg_cli::run(std::env::args_os(), env_cap.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
