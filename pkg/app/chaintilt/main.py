from chaintilt.commands.commands import app


def run() -> None:
    """Точка входа консольной команды chaintilt."""
    app(prog_name="chaintilt")


if __name__ == "__main__":
    run()
