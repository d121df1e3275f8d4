from refcrys.cli import main

main()
