# Imaging package
