# Módulos de cálculo: grupo, estados de orientação, geometria e reconstrução
