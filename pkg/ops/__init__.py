# Ops package
