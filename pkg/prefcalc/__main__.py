from prefcalc.cli import main

main()
