use clap::Parser;

#[derive(Parser)]
#[command(name = "mersq-serve", version, about = "Serve the mersq solver API over HTTP")]
struct Args {
    /// Address to listen on
    #[arg(long, default_value = "127.0.0.1:8080")]
    bind: String,
}

#[tokio::main]
async fn main() {
    let args = Args::parse();
    let listener = match tokio::net::TcpListener::bind(&args.bind).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("failed to bind {}: {e}", args.bind);
            std::process::exit(1);
        }
    };
    let addr = listener.local_addr().expect("listener has an address");
    eprintln!("mersq-serve listening on http://{addr}");
    axum::serve(listener, mersq_service::router())
        .await
        .expect("server error");
}
