fn main() -> std::process::ExitCode {
    super_catalan::cli::main()
}
