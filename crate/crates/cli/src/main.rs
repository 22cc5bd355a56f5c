fn main() {
    let argv: Vec<String> = std::env::args_os()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let code = yitang_cli::dispatch(argv, &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
