# Pacote do laboratório de tranças livres G_n^3
