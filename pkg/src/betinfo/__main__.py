from betinfo.cli import main

main()
