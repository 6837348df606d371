# Ambient Dirac Module
