from heisweil.cli import main

main()
