fn main() -> std::process::ExitCode {
    coarsemet::cli::main()
}
