from qsphere.cli import main

raise SystemExit(main())
