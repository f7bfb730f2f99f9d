from tricomi_lab.cli import main

main()
