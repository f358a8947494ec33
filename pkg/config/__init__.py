# Configuración del proyecto arbor (settings base y de pruebas)
