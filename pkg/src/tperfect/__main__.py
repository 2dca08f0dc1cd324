from tperfect.cli import main

main()
