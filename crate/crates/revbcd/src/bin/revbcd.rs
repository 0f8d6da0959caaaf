fn main() -> std::process::ExitCode {
    revbcd::cli::main()
}
