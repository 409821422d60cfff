from zfc.cli import main

main()
